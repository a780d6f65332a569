#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "liftexp/identify.hpp"
#include "liftexp/polygon.hpp"
#include "liftexp/sample.hpp"
#include "liftexp/tuples.hpp"

namespace liftexp::io {

/// Locale-independent decimal rendering with 17 significant digits (enough
/// to round-trip any double).
std::string format_double(double v);

/// One parsed JSON-lines record: a body plus its optional weight (kept
/// exact when written as "p/q" or as an integer count) and optional tuple
/// group key.
struct WeightedBody {
    ConvexBody body;
    std::optional<double> weight;
    std::optional<Rational> exact_weight;
    std::optional<long long> obs;
};

std::vector<WeightedBody> read_body_jsonl(std::istream& in);

/// Builds a sample, normalising weights to sum one (exactly, when all
/// weights are exact). Either every record carries a weight or none does;
/// absent weights mean uniform.
BodySample sample_from_weighted(const std::vector<WeightedBody>& records);

/// Groups records by their "obs" key (first-appearance order) into coupled
/// tuples; slot order is line order within a group.
CoupledTupleSample tuple_sample_from_weighted(const std::vector<WeightedBody>& records);

void write_body_jsonl(std::ostream& out, const BodySample& sample);

/// Interval CSV: header "lo,hi" with an optional third column "weight".
BodySample read_interval_csv(std::istream& in);
void write_interval_csv(std::ostream& out, const BodySample& sample);

/// Binned survey codes: code i in {1..max_code} maps to [a_i, b_i] with
/// a_1 = origin, b_i = a_i + width and a_i = b_{i-1} + 1.
struct BinnedCodeScheme {
    double width = 2499.0;
    double origin = 0.0;
    int max_code = 40;

    Interval interval_for(int code) const;
};

struct IngestReport {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::vector<std::string> rejections;  // capped sample of reasons
};

/// Reads a CSV with a "code" column into a uniform-weight interval sample.
/// Out-of-range and non-integer codes are rejected and counted.
BodySample ingest_codes(std::istream& in, const BinnedCodeScheme& scheme,
                        IngestReport* report = nullptr);

/// Synthetic code files in the same schema (income-shaped, seeded); rows
/// above max_code appear at the natural rate so the rejection path runs.
void generate_codes_csv(std::ostream& out, std::size_t rows, std::uint64_t seed,
                        const BinnedCodeScheme& scheme = {});

/// Polygon CSV: header "x,y", counterclockwise vertices starting at (0,0).
void write_polygon_csv(std::ostream& out, const Polygon2D& polygon);
Polygon2D read_polygon_csv(std::istream& in);

/// Presentation-only SVG: one closed path, viewBox fitted with 5% margin.
void write_polygon_svg(std::ostream& out, const Polygon2D& polygon);

/// Oracle CSV: "direction_index,angle,value,prob", one row per atom.
void write_oracle_csv(std::ostream& out, const MarginalOracle& oracle);
MarginalOracle read_oracle_csv(std::istream& in, double merge_tol = kMergeTol);

/// Reconstruction CSV: "realization_index,direction_index,value,prob".
void write_reconstruction_csv(std::ostream& out, const ReconstructionResult& result);

}  // namespace liftexp::io

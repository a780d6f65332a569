#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "liftexp/direction_grid.hpp"
#include "liftexp/error.hpp"
#include "liftexp/identify.hpp"
#include "liftexp/io.hpp"
#include "liftexp/lift.hpp"
#include "liftexp/order.hpp"
#include "liftexp/polygon.hpp"
#include "liftexp/tuples.hpp"

namespace liftexp::cli {

namespace {

using io::format_double;

enum class Format { Auto, Intervals, Bodies, Codes, Oracle };

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Format sniff(const std::string& content, const std::string& path) {
    std::istringstream in(content);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '{') return Format::Bodies;
        if (line.rfind("direction_index,", 0) == 0) return Format::Oracle;
        if (line.rfind("lo,hi", 0) == 0) return Format::Intervals;
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ','))
            if (cell == "code") return Format::Codes;
        throw ValidationError("cannot determine the format of '" + path +
                              "' (expected body JSONL, 'lo,hi' CSV, a 'code' column, or an "
                              "oracle CSV)");
    }
    throw ValidationError("'" + path + "' is empty");
}

struct SampleOptions {
    std::string path;
    std::string format = "auto";
};

Format parse_format(const std::string& name) {
    if (name == "auto") return Format::Auto;
    if (name == "intervals") return Format::Intervals;
    if (name == "bodies") return Format::Bodies;
    if (name == "codes") return Format::Codes;
    if (name == "oracle") return Format::Oracle;
    throw ValidationError("unknown format '" + name + "'");
}

BodySample load_sample(const SampleOptions& opt, std::ostream& err) {
    const std::string content = read_file(opt.path);
    Format fmt = parse_format(opt.format);
    if (fmt == Format::Auto) fmt = sniff(content, opt.path);
    std::istringstream in(content);
    switch (fmt) {
        case Format::Intervals:
            return io::read_interval_csv(in);
        case Format::Bodies:
            return io::sample_from_weighted(io::read_body_jsonl(in));
        case Format::Codes: {
            io::IngestReport report;
            BodySample s = io::ingest_codes(in, io::BinnedCodeScheme{}, &report);
            err << "ingest: accepted " << report.accepted << " rows, rejected "
                << report.rejected << "\n";
            for (const std::string& r : report.rejections) err << "  rejected " << r << "\n";
            return s;
        }
        default:
            throw ValidationError("'" + opt.path +
                                  "': this command expects a sample, not an oracle CSV");
    }
}

DirectionGrid grid_for(std::size_t dim, std::size_t dirs, std::uint64_t seed) {
    return DirectionGrid::for_dimension(dim, dirs, seed);
}

void print_direction_rows(std::ostream& out, const DirectionGrid& grid,
                          const std::function<double(const Vec&)>& value) {
    for (const Vec& u : grid.vectors()) {
        for (double c : u) out << format_double(c) << ',';
        out << format_double(value(u)) << "\n";
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    return f;
}

MarginalOracle oracle_for_sample(const BodySample& s, std::size_t dirs, std::uint64_t seed,
                                 double tol) {
    if (s.dim() == 1) {
        MarginalOracle o = marginal_oracle(s, DirectionGrid::line().vectors(), tol);
        o.angles = {0.0, 3.14159265358979323846};
        return o;
    }
    if (s.dim() == 2) return circular_marginal_oracle(s, dirs, tol);
    const DirectionGrid grid = grid_for(s.dim(), dirs, seed);
    return marginal_oracle(s, grid.vectors(), tol);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"empirical lift expectations of random convex bodies"};
    app.require_subcommand(1);
    std::function<void()> action;

    const auto add_sample_input = [](CLI::App* cmd, SampleOptions& opt) {
        cmd->add_option("input", opt.path, "input file (body JSONL, interval CSV, code CSV)")
            ->required();
        cmd->add_option("--format", opt.format, "auto|intervals|bodies|codes")
            ->default_val("auto");
    };

    // mean --------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("mean", "selection expectation E X");
        auto opt = std::make_shared<SampleOptions>();
        auto dirs = std::make_shared<std::size_t>(360);
        auto seed = std::make_shared<std::uint64_t>(12345);
        add_sample_input(cmd, *opt);
        cmd->add_option("--dirs", *dirs, "direction count for d >= 2 output");
        cmd->add_option("--seed", *seed, "seed for d >= 3 direction grids");
        cmd->callback([&action, &out, &err, opt, dirs, seed] {
            action = [&, opt, dirs, seed] {
                const BodySample s = load_sample(*opt, err);
                if (s.dim() == 1) {
                    out << format_double(-expectation_support(s, Vec{-1.0})) << ','
                        << format_double(expectation_support(s, Vec{1.0})) << "\n";
                } else {
                    print_direction_rows(out, grid_for(s.dim(), *dirs, *seed),
                                         [&](const Vec& u) { return expectation_support(s, u); });
                }
            };
        });
    }

    // polygon ------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("polygon", "d = 1 lift expectation polygon");
        auto opt = std::make_shared<SampleOptions>();
        auto csv = std::make_shared<std::string>();
        auto svg = std::make_shared<std::string>();
        add_sample_input(cmd, *opt);
        cmd->add_option("--csv", *csv, "write the vertex CSV here instead of stdout");
        cmd->add_option("--svg", *svg, "also write an SVG rendering");
        cmd->callback([&action, &out, &err, opt, csv, svg] {
            action = [&, opt, csv, svg] {
                const Polygon2D poly = polygon_1d(load_sample(*opt, err));
                if (csv->empty()) {
                    io::write_polygon_csv(out, poly);
                } else {
                    auto f = open_out(*csv);
                    io::write_polygon_csv(f, poly);
                }
                if (!svg->empty()) {
                    auto f = open_out(*svg);
                    io::write_polygon_svg(f, poly);
                }
            };
        });
    }

    // trim ---------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("trim", "depth-trimmed region support");
        auto opt = std::make_shared<SampleOptions>();
        auto alpha = std::make_shared<double>(0.0);
        auto dirs = std::make_shared<std::size_t>(360);
        auto seed = std::make_shared<std::uint64_t>(12345);
        add_sample_input(cmd, *opt);
        cmd->add_option("--alpha", *alpha, "trimming level in (0, 1]")->required();
        cmd->add_option("--dirs", *dirs, "direction count for d >= 2 output");
        cmd->add_option("--seed", *seed, "seed for d >= 3 direction grids");
        cmd->callback([&action, &out, &err, opt, alpha, dirs, seed] {
            action = [&, opt, alpha, dirs, seed] {
                const BodySample s = load_sample(*opt, err);
                if (s.dim() == 1) {
                    out << format_double(-trimmed_region_support(s, *alpha, Vec{-1.0})) << ','
                        << format_double(trimmed_region_support(s, *alpha, Vec{1.0})) << "\n";
                } else {
                    print_direction_rows(out, grid_for(s.dim(), *dirs, *seed), [&](const Vec& u) {
                        return trimmed_region_support(s, *alpha, u);
                    });
                }
            };
        });
    }

    // outliers -------------------------------------------------------------------
    {
        auto* cmd =
            app.add_subcommand("outliers", "sample bodies sticking out of the trimmed region");
        auto opt = std::make_shared<SampleOptions>();
        auto alpha = std::make_shared<double>(0.0);
        auto dirs = std::make_shared<std::size_t>(360);
        auto seed = std::make_shared<std::uint64_t>(12345);
        auto tol = std::make_shared<double>(kMergeTol);
        add_sample_input(cmd, *opt);
        cmd->add_option("--alpha", *alpha, "trimming level in (0, 1]")->required();
        cmd->add_option("--dirs", *dirs, "witness direction count");
        cmd->add_option("--seed", *seed, "seed for d >= 3 direction grids");
        cmd->add_option("--tol", *tol, "exceedance tolerance");
        cmd->callback([&action, &out, &err, opt, alpha, dirs, seed, tol] {
            action = [&, opt, alpha, dirs, seed, tol] {
                const BodySample s = load_sample(*opt, err);
                const DirectionGrid grid = grid_for(s.dim(), *dirs, *seed);
                std::size_t flagged = 0;
                for (std::size_t i = 0; i < s.size(); ++i) {
                    if (is_outlier(s, *alpha, s.body(i), grid.vectors(), *tol)) {
                        out << i << "\n";
                        ++flagged;
                    }
                }
                err << "outliers: flagged " << flagged << " of " << s.size() << " bodies\n";
            };
        });
    }

    // order --------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("order", "lift-expectation inclusion of A in B");
        auto a = std::make_shared<SampleOptions>();
        auto b = std::make_shared<SampleOptions>();
        auto dirs = std::make_shared<std::size_t>(360);
        auto seed = std::make_shared<std::uint64_t>(12345);
        cmd->add_option("A", a->path, "first sample")->required();
        cmd->add_option("B", b->path, "second sample")->required();
        cmd->add_option("--format", a->format, "auto|intervals|bodies|codes")
            ->default_val("auto");
        cmd->add_option("--dirs", *dirs, "direction count");
        cmd->add_option("--seed", *seed, "seed for d >= 3 direction grids");
        cmd->callback([&action, &out, &err, a, b, dirs, seed] {
            action = [&, a, b, dirs, seed] {
                b->format = a->format;
                const BodySample sa = load_sample(*a, err);
                const BodySample sb = load_sample(*b, err);
                const DirectionGrid grid = grid_for(sa.dim(), *dirs, *seed);
                const auto witness = lift_inclusion_witness(sa, sb, grid);
                if (!witness) {
                    out << "included,true\n";
                    bool equal_means = true;
                    for (const Vec& u : grid.vectors())
                        if (std::abs(expectation_support(sa, u) - expectation_support(sb, u)) >
                            kExactTol)
                            equal_means = false;
                    // equal means upgrade the increasing convex order to the
                    // convex order; report the case, no separate verdict
                    out << "equal_means," << (equal_means ? "true" : "false") << "\n";
                } else {
                    out << "included,false\n";
                    out << "witness";
                    for (double c : witness->u) out << ',' << format_double(c);
                    out << ',' << format_double(witness->t) << "\n";
                }
            };
        });
    }

    // gini ---------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("gini", "lift polygon area and Gini bound");
        auto opt = std::make_shared<SampleOptions>();
        add_sample_input(cmd, *opt);
        cmd->callback([&action, &out, &err, opt] {
            action = [&, opt] {
                const GiniArea g = gini_area(load_sample(*opt, err));
                out << "area," << format_double(g.area) << "\n";
                out << "gmd_upper," << format_double(g.gmd_upper) << "\n";
            };
        });
    }

    // avar ---------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("avar", "rescaled vertical section of the lift polygon");
        auto opt = std::make_shared<SampleOptions>();
        auto alpha = std::make_shared<double>(0.0);
        add_sample_input(cmd, *opt);
        cmd->add_option("--alpha", *alpha, "level in (0, 1]")->required();
        cmd->callback([&action, &out, &err, opt, alpha] {
            action = [&, opt, alpha] {
                const auto [lo, hi] = avar_interval(load_sample(*opt, err), *alpha);
                out << format_double(lo) << ',' << format_double(hi) << "\n";
            };
        });
    }

    // hoeffding ------------------------------------------------------------------
    {
        auto* cmd =
            app.add_subcommand("hoeffding", "support of the expected convex hull of n draws");
        auto opt = std::make_shared<SampleOptions>();
        auto n = std::make_shared<int>(1);
        auto dirs = std::make_shared<std::size_t>(360);
        auto seed = std::make_shared<std::uint64_t>(12345);
        add_sample_input(cmd, *opt);
        cmd->add_option("--n", *n, "number of i.i.d. copies")->required();
        cmd->add_option("--dirs", *dirs, "direction count for d >= 2");
        cmd->add_option("--seed", *seed, "seed for d >= 3 direction grids");
        cmd->callback([&action, &out, &err, opt, n, dirs, seed] {
            action = [&, opt, n, dirs, seed] {
                const BodySample s = load_sample(*opt, err);
                const DirectionGrid grid =
                    s.dim() == 1 ? DirectionGrid::line() : grid_for(s.dim(), *dirs, *seed);
                print_direction_rows(out, grid,
                                     [&](const Vec& u) { return hoeffding_support(s, *n, u); });
            };
        });
    }

    // reconstruct ----------------------------------------------------------------
    {
        auto* cmd =
            app.add_subcommand("reconstruct", "recover realizations from marginal laws");
        auto opt = std::make_shared<SampleOptions>();
        auto mode = std::make_shared<std::string>();
        auto dirs = std::make_shared<std::size_t>(360);
        auto seed = std::make_shared<std::uint64_t>(12345);
        auto tol = std::make_shared<double>(kMergeTol);
        cmd->add_option("input", opt->path, "oracle CSV or a sample file")->required();
        cmd->add_option("--format", opt->format, "auto|intervals|bodies|codes|oracle")
            ->default_val("auto");
        cmd->add_option("--mode", *mode, "distinct|continuation")->required();
        cmd->add_option("--dirs", *dirs, "oracle path size when the input is a sample");
        cmd->add_option("--seed", *seed, "seed for d >= 3 direction paths");
        cmd->add_option("--tol", *tol, "merge tolerance");
        cmd->callback([&action, &out, &err, opt, mode, dirs, seed, tol] {
            action = [&, opt, mode, dirs, seed, tol] {
                if (*mode != "distinct" && *mode != "continuation")
                    throw ValidationError("--mode must be distinct or continuation");
                const std::string content = read_file(opt->path);
                Format fmt = parse_format(opt->format);
                if (fmt == Format::Auto) fmt = sniff(content, opt->path);
                MarginalOracle oracle = [&] {
                    if (fmt == Format::Oracle) {
                        std::istringstream in(content);
                        return io::read_oracle_csv(in, *tol);
                    }
                    return oracle_for_sample(load_sample(*opt, err), *dirs, *seed, *tol);
                }();
                const ReconstructionResult result =
                    *mode == "distinct" ? reconstruct_distinct_probs(oracle, *tol)
                                        : reconstruct_continuation(oracle, *tol);
                io::write_reconstruction_csv(out, result);
                for (const std::string& d : result.diagnostics) err << d << "\n";
            };
        });
    }

    // oracle -------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("oracle", "emit the marginal oracle CSV of a sample");
        auto opt = std::make_shared<SampleOptions>();
        auto dirs = std::make_shared<std::size_t>(360);
        auto tol = std::make_shared<double>(kMergeTol);
        add_sample_input(cmd, *opt);
        cmd->add_option("--dirs", *dirs, "angular path size for d = 2");
        cmd->add_option("--tol", *tol, "merge tolerance");
        cmd->callback([&action, &out, &err, opt, dirs, tol] {
            action = [&, opt, dirs, tol] {
                const BodySample s = load_sample(*opt, err);
                if (s.dim() > 2)
                    throw ValidationError("oracle CSV is angular; it supports d <= 2 only");
                io::write_oracle_csv(out, oracle_for_sample(s, *dirs, 0, *tol));
            };
        });
    }

    // tuple-eval -----------------------------------------------------------------
    {
        auto* cmd =
            app.add_subcommand("tuple-eval", "tuple lift support over a (u0, directions) grid");
        auto opt = std::make_shared<SampleOptions>();
        auto u0_min = std::make_shared<double>(-5.0);
        auto u0_max = std::make_shared<double>(5.0);
        auto u0_count = std::make_shared<std::size_t>(11);
        auto dirs = std::make_shared<std::size_t>(8);
        auto seed = std::make_shared<std::uint64_t>(12345);
        cmd->add_option("input", opt->path, "body JSONL with an 'obs' group key")->required();
        cmd->add_option("--u0-min", *u0_min, "lowest u0");
        cmd->add_option("--u0-max", *u0_max, "highest u0");
        cmd->add_option("--u0-count", *u0_count, "number of u0 values");
        cmd->add_option("--dirs", *dirs, "directions per tuple slot");
        cmd->add_option("--seed", *seed, "seed for d >= 3 slot grids");
        cmd->callback([&action, &out, opt, u0_min, u0_max, u0_count, dirs, seed] {
            action = [&, opt, u0_min, u0_max, u0_count, dirs, seed] {
                const std::string content = read_file(opt->path);
                std::istringstream in(content);
                const CoupledTupleSample sample =
                    io::tuple_sample_from_weighted(io::read_body_jsonl(in));
                if (*u0_count < 1) throw ValidationError("--u0-count must be positive");
                std::vector<double> u0s;
                for (std::size_t i = 0; i < *u0_count; ++i)
                    u0s.push_back(*u0_count == 1
                                      ? *u0_min
                                      : *u0_min + (*u0_max - *u0_min) * static_cast<double>(i) /
                                                      static_cast<double>(*u0_count - 1));
                std::vector<DirectionGrid> slot_grids;
                for (std::size_t j = 0; j < sample.tuple_len(); ++j)
                    slot_grids.push_back(grid_for(sample.slot_dim(j), *dirs, *seed + j));
                std::vector<std::size_t> idx(sample.tuple_len(), 0);
                while (true) {
                    std::vector<Vec> us;
                    for (std::size_t j = 0; j < idx.size(); ++j)
                        us.push_back(slot_grids[j][idx[j]]);
                    for (double u0 : u0s) {
                        out << format_double(u0);
                        for (const Vec& u : us)
                            for (double c : u) out << ',' << format_double(c);
                        out << ',' << format_double(tuple_lift_support(sample, u0, us)) << "\n";
                    }
                    std::size_t j = 0;
                    for (; j < idx.size(); ++j) {
                        if (++idx[j] < slot_grids[j].size()) break;
                        idx[j] = 0;
                    }
                    if (j == idx.size()) break;
                }
            };
        });
    }

    // gen-codes ------------------------------------------------------------------
    {
        auto* cmd = app.add_subcommand("gen-codes", "synthetic binned-code CSV");
        auto rows = std::make_shared<std::size_t>(1000);
        auto seed = std::make_shared<std::uint64_t>(12345);
        auto path = std::make_shared<std::string>();
        cmd->add_option("--rows", *rows, "number of rows");
        cmd->add_option("--seed", *seed, "generator seed");
        cmd->add_option("--out", *path, "output file (default stdout)");
        cmd->callback([&action, &out, rows, seed, path] {
            action = [&, rows, seed, path] {
                if (path->empty()) {
                    io::generate_codes_csv(out, *rows, *seed);
                } else {
                    auto f = open_out(*path);
                    io::generate_codes_csv(f, *rows, *seed);
                }
            };
        });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        action();
        return 0;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const AlgorithmError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace liftexp::cli

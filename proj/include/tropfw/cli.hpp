#ifndef TROPFW_CLI_HPP
#define TROPFW_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "tropfw/gradient_descent.hpp"
#include "tropfw/io.hpp"
#include "tropfw/oracle.hpp"
#include "tropfw/svg.hpp"

namespace tropfw {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInternalError = 3;

struct RunConfig {
    std::string input;
    std::string output;  // empty = stdout
    double tol_tie = kDefaultTieTolerance;
    double tol_obj = 1e-6;
    double step0 = 0.0;  // 0 = auto: f(x0) / (2n)
    StepSchedule schedule = StepSchedule::exact_line_search;
    std::size_t max_iters = 10000;
    std::uint64_t seed = 0;
    double grid_h = 0.25;
    std::string x0;  // point literal; empty = seeded-random in bounding box
    std::vector<std::string> points;  // positional args (distance)
};

namespace detail {

inline int log_level() {
    const char* env = std::getenv("TROPFW_LOG");
    return env ? std::atoi(env) : 0;
}

inline void log_info(const std::string& msg) {
    if (log_level() > 0) std::cerr << "tropfw: " << msg << "\n";
}

inline int write_output(const RunConfig& cfg, const std::string& payload) {
    if (cfg.output.empty()) {
        std::cout << payload;
        return kExitOk;
    }
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
        std::cerr << "tropfw: cannot open output file: " << cfg.output << "\n";
        return kExitInternalError;
    }
    out << payload;
    return kExitOk;
}

template <typename Fn>
inline int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const InvalidInput& e) {
        std::cerr << "tropfw: input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const DimensionError& e) {
        std::cerr << "tropfw: input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "tropfw: internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
}

}  // namespace detail

inline int cmd_solve(const RunConfig& cfg) {
    return detail::guarded([&] {
        const SampleMatrix V = read_sample_file(cfg.input);
        detail::log_info("solving n=" + std::to_string(V.size()) +
                         " d=" + std::to_string(V.dim()));
        const FWPolytrope P = solve(V);
        return detail::write_output(cfg, polytrope_to_json(V, P).dump(2) + "\n");
    });
}

inline int cmd_descend(const RunConfig& cfg) {
    return detail::guarded([&] {
        const SampleMatrix V = read_sample_file(cfg.input);
        TropicalPoint x0;
        if (!cfg.x0.empty()) {
            x0 = parse_point(cfg.x0);
        } else {
            std::mt19937_64 rng(cfg.seed);
            std::vector<double> coords(V.dim(), 0.0);
            for (std::size_t j = 1; j < V.dim(); ++j) {
                double lo = V(0, j), hi = V(0, j);
                for (std::size_t i = 1; i < V.size(); ++i) {
                    lo = std::min(lo, V(i, j));
                    hi = std::max(hi, V(i, j));
                }
                coords[j] = std::uniform_real_distribution<double>(lo, hi)(rng);
            }
            x0 = TropicalPoint(std::move(coords));
        }

        DescentConfig dc;
        dc.schedule = cfg.schedule;
        dc.max_iters = cfg.max_iters;
        dc.eps_tie = cfg.tol_tie;
        dc.eps_obj = cfg.tol_obj;
        dc.step0 = cfg.step0 > 0.0
                       ? cfg.step0
                       : fw_objective(V, x0) / (2.0 * static_cast<double>(V.size()));
        if (dc.step0 <= 0.0) dc.step0 = 1.0;

        const DescentTrace trace = descend(V, x0, dc);

        nlohmann::json doc;
        doc["schema"] = "tropfw/1";
        doc["status"] =
            trace.status == DescentStatus::converged ? "converged" : "max_iters";
        doc["terminal"] = point_to_json(trace.terminal);
        doc["terminal_f"] = fw_objective(V, trace.terminal);
        nlohmann::json iters = nlohmann::json::array();
        for (const auto& it : trace.iterates) {
            iters.push_back({{"x", point_to_json(it.x)},
                             {"f", it.f},
                             {"direction", it.direction},
                             {"used_oracle", it.used_oracle}});
        }
        doc["iterates"] = iters;
        return detail::write_output(cfg, doc.dump(2) + "\n");
    });
}

inline int cmd_distance(const RunConfig& cfg) {
    return detail::guarded([&] {
        if (cfg.points.size() != 2) throw InvalidInput("distance expects exactly two points");
        const TropicalPoint u = parse_point(cfg.points[0]);
        const TropicalPoint v = parse_point(cfg.points[1]);
        std::ostringstream os;
        os << trop_distance(u, v) << "\n";
        return detail::write_output(cfg, os.str());
    });
}

inline int cmd_oracle_check(const RunConfig& cfg) {
    return detail::guarded([&] {
        std::ifstream in(cfg.input);
        if (!in) throw InvalidInput("cannot open input file: " + cfg.input);
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception& e) {
            throw InvalidInput(std::string("malformed JSON: ") + e.what());
        }
        SolveDocument sd = polytrope_from_json(doc);
        const GridSpec spec = GridSpec::bounding(sd.sample, cfg.grid_h);
        const auto violations = verify_polytrope(sd.sample, sd.polytrope, spec);
        nlohmann::json out;
        out["schema"] = "tropfw/1";
        out["violations"] = violations;
        out["ok"] = violations.empty();
        const int rc = detail::write_output(cfg, out.dump(2) + "\n");
        if (rc != kExitOk) return rc;
        return violations.empty() ? kExitOk : kExitInternalError;
    });
}

inline int cmd_plot(const RunConfig& cfg) {
    return detail::guarded([&] {
        const SampleMatrix V = read_sample_file(cfg.input);
        if (V.dim() != 3) throw InvalidInput("plot requires d = 3 input");
        const FWPolytrope P = solve(V);
        std::ostringstream os;
        write_svg_plot(os, V, P);
        return detail::write_output(cfg, os.str());
    });
}

}  // namespace tropfw

#endif  // TROPFW_CLI_HPP

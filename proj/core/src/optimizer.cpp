// SPDX-License-Identifier: Apache-2.0
#include "maopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "maopt/gradient.hpp"

namespace maopt {

AntennaLayout project_layout(const AntennaLayout& t,
                             const std::vector<Region>& regions) {
    AntennaLayout out = t;
    for (arma::uword n = 0; n < t.n_cols; ++n) {
        const Region& r = regions[n];
        out(0, n) = std::min(std::max(r.x_min, out(0, n)), r.x_max);
        out(1, n) = std::min(std::max(r.y_min, out(1, n)), r.y_max);
    }
    return out;
}

AntennaLayout random_layout(const std::vector<Region>& regions,
                            SubstreamRng& rng) {
    AntennaLayout t(2, regions.size());
    for (std::size_t n = 0; n < regions.size(); ++n) {
        t(0, n) = rng.next_uniform(regions[n].x_min, regions[n].x_max);
        t(1, n) = rng.next_uniform(regions[n].y_min, regions[n].y_max);
    }
    return t;
}

namespace {

// Plateau test: the objective stayed within conv_tol across the trailing
// window. Gradient-norm tests would misfire at box-boundary stationary
// points, where the projected update is zero but the raw gradient is not.
bool plateaued(const std::vector<double>& objective, int window, double tol) {
    const int count = static_cast<int>(objective.size());
    if (count <= window) return false;
    return std::abs(objective[count - 1] - objective[count - 1 - window]) < tol;
}

} // namespace

PgaTrace pga_run(const SystemConfig& cfg, const AntennaLayout& start,
                 const InverseGammaLinearization& lin, const PgaConfig& pga) {
    PgaTrace trace;
    AntennaLayout t = project_layout(start, cfg.regions);
    trace.objective.reserve(pga.max_iters + 1);
    trace.objective.push_back(evaluate_sum_rate(cfg, t, lin).total);

    for (int k = 0; k < pga.max_iters; ++k) {
        const arma::mat grad = objective_gradient(cfg, t, lin);
        AntennaLayout next;
        double next_obj;
        if (!pga.line_search) {
            next = project_layout(t + pga.step_size * grad, cfg.regions);
            next_obj = evaluate_sum_rate(cfg, next, lin).total;
        } else {
            // Armijo backtracking along the projection arc: accept the first
            // step with a sufficient increase over the linear model.
            double step = pga.step_size;
            const double current = trace.objective.back();
            bool accepted = false;
            next = t;
            next_obj = current;
            for (int attempt = 0; attempt < pga.max_backtracks; ++attempt) {
                const AntennaLayout cand =
                    project_layout(t + step * grad, cfg.regions);
                const double cand_obj = evaluate_sum_rate(cfg, cand, lin).total;
                const double model =
                    pga.armijo_c * arma::dot(grad, cand - t);
                if (cand_obj >= current + model) {
                    next = cand;
                    next_obj = cand_obj;
                    accepted = true;
                    break;
                }
                step *= pga.backtrack;
            }
            if (!accepted) {
                // No admissible step: the projected gradient is numerically
                // zero. Record the stall and let the plateau test fire.
                next = t;
                next_obj = current;
            }
        }
        t = next;
        trace.objective.push_back(next_obj);
        trace.iterations = k + 1;
        if (plateaued(trace.objective, pga.conv_window, pga.conv_tol)) {
            trace.converged = true;
            break;
        }
    }
    trace.final_layout = t;
    trace.final_objective = trace.objective.back();
    return trace;
}

MultiStartResult multi_start(const SystemConfig& cfg,
                             const InverseGammaLinearization& lin,
                             const PgaConfig& pga, std::uint64_t seed,
                             const std::vector<AntennaLayout>& extra_starts) {
    std::vector<AntennaLayout> starts;
    starts.reserve(pga.num_starts + extra_starts.size());
    for (int i = 0; i < pga.num_starts; ++i) {
        SubstreamRng rng(seed, 0x5741u /* start stream tag */, i);
        starts.push_back(random_layout(cfg.regions, rng));
    }
    starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());

    // Starts are independent; run them concurrently and merge by index so
    // the outcome does not depend on scheduling.
    std::vector<std::future<PgaTrace>> jobs;
    jobs.reserve(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i) {
        jobs.push_back(std::async(std::launch::async, [&, i] {
            PgaTrace tr = pga_run(cfg, starts[i], lin, pga);
            tr.start_index = static_cast<int>(i);
            return tr;
        }));
    }
    MultiStartResult result;
    result.traces.reserve(jobs.size());
    for (auto& job : jobs) result.traces.push_back(job.get());

    int best = 0;
    for (std::size_t i = 1; i < result.traces.size(); ++i) {
        if (result.traces[i].final_objective >
            result.traces[best].final_objective) {
            best = static_cast<int>(i);
        }
    }
    result.best = result.traces[best];
    return result;
}

} // namespace maopt

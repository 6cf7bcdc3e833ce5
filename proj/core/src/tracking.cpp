// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include <nhzm/spectral.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nhzm {

const TrajectoryPoint* ModeTrajectory::at_step(std::size_t step) const {
    auto it = std::lower_bound(points.begin(), points.end(), step,
                               [](const TrajectoryPoint& p, std::size_t s) { return p.step < s; });
    return (it != points.end() && it->step == step) ? &*it : nullptr;
}

const ModeTrajectory& TrackingResult::by_label(int label) const {
    for (const ModeTrajectory& t : trajectories) {
        if (t.label == label) return t;
    }
    throw std::out_of_range("no trajectory with label " + std::to_string(label));
}

namespace {

std::vector<std::size_t> report_order(const ModeSet& ms, const TrackOptions& opts) {
    std::vector<std::size_t> zero;
    std::vector<std::size_t> rest;
    for (std::size_t mu = 0; mu < ms.size(); ++mu) {
        const Complex w = ms.eigenvalue(mu);
        (std::abs(w.real() - opts.omega0) <= opts.zero_tol ? zero : rest).push_back(mu);
    }
    std::stable_sort(zero.begin(), zero.end(), [&](std::size_t a, std::size_t b) {
        const double ia = ms.eigenvalue(a).imag();
        const double ib = ms.eigenvalue(b).imag();
        if (std::abs(ia) != std::abs(ib)) return std::abs(ia) > std::abs(ib);
        return ia > ib;
    });
    // ModeSet is already ordered by Re omega, then Im omega.
    zero.insert(zero.end(), rest.begin(), rest.end());
    return zero;
}

struct Active {
    ModeTrajectory traj;
    std::size_t mode = 0;  // mode index at the most recently added step
};

}  // namespace

TrackingResult track_modes(const std::vector<ModeSet>& sweep, const TrackOptions& opts) {
    if (sweep.size() < 2) throw DomainError("mode tracking needs at least two sweep points");
    const std::size_t last = sweep.size() - 1;

    TrackingResult result;
    std::vector<Active> active;
    int label = 0;
    for (std::size_t mu : report_order(sweep[last], opts)) {
        Active a;
        a.traj.label = ++label;
        a.traj.points.push_back({last, mu, sweep[last].eigenvalue(mu), 1.0});
        a.mode = mu;
        active.push_back(std::move(a));
    }

    for (std::size_t step = last; step-- > 0;) {
        const ModeSet& cur = sweep[step];
        const ModeSet& nxt = sweep[step + 1];
        const std::size_t n = cur.size();

        struct Cand {
            std::size_t t;
            std::size_t j;
            double overlap;
        };
        std::vector<Cand> cands;
        std::vector<double> best(active.size(), 0.0);
        for (std::size_t t = 0; t < active.size(); ++t) {
            const auto ref = nxt.right().col(static_cast<Eigen::Index>(active[t].mode));
            for (std::size_t j = 0; j < n; ++j) {
                const double ov = std::abs(ref.dot(cur.right().col(static_cast<Eigen::Index>(j))));
                best[t] = std::max(best[t], ov);
                if (ov >= opts.min_overlap) cands.push_back({t, j, ov});
            }
        }
        std::stable_sort(cands.begin(), cands.end(),
                         [](const Cand& a, const Cand& b) { return a.overlap > b.overlap; });

        std::vector<bool> t_done(active.size(), false);
        std::vector<bool> j_used(n, false);
        for (const Cand& c : cands) {
            if (t_done[c.t] || j_used[c.j]) continue;
            t_done[c.t] = true;
            j_used[c.j] = true;
            active[c.t].traj.points.push_back({step, c.j, cur.eigenvalue(c.j), c.overlap});
            active[c.t].mode = c.j;
        }

        std::vector<Active> still;
        for (std::size_t t = 0; t < active.size(); ++t) {
            if (t_done[t]) {
                still.push_back(std::move(active[t]));
            } else {
                result.warnings.push_back({step, active[t].traj.label, best[t]});
                result.trajectories.push_back(std::move(active[t].traj));
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (j_used[j]) continue;
            Active a;
            a.traj.label = ++label;
            a.traj.points.push_back({step, j, cur.eigenvalue(j), 0.0});
            a.mode = j;
            still.push_back(std::move(a));
        }
        active = std::move(still);
    }

    for (Active& a : active) result.trajectories.push_back(std::move(a.traj));
    for (ModeTrajectory& t : result.trajectories) std::reverse(t.points.begin(), t.points.end());
    std::sort(result.trajectories.begin(), result.trajectories.end(),
              [](const ModeTrajectory& a, const ModeTrajectory& b) { return a.label < b.label; });
    return result;
}

double fit_pair_threshold(std::span<const double> gamma, std::span<const double> im_first,
                          std::span<const double> im_second) {
    if (gamma.size() != im_first.size() || gamma.size() != im_second.size()) {
        throw FitError("pair-threshold fit needs equally sized samples");
    }
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        if (!(im_first[i] * im_second[i] < 0.0)) continue;
        const double g2 = gamma[i] * gamma[i];
        sum += (g2 - im_first[i] * im_first[i]) + (g2 - im_second[i] * im_second[i]);
        ++used;
    }
    if (used < 3) {
        throw FitError("pair-threshold fit needs at least 3 points with Im omega of opposite "
                       "sign, got " + std::to_string(used));
    }
    // argmin_g sum (Im^2 - (gamma^2 - g))^2 is the mean of gamma^2 - Im^2.
    const double g2mu = sum / static_cast<double>(2 * used);
    if (g2mu < 0.0) throw FitError("pair-threshold fit gave a negative gamma_mu^2");
    return std::sqrt(g2mu);
}

double fit_pair_threshold(const ModeTrajectory& first, const ModeTrajectory& second,
                          std::span<const double> gamma_grid, const TrackOptions& opts) {
    std::vector<double> g;
    std::vector<double> a;
    std::vector<double> b;
    for (const TrajectoryPoint& p : first.points) {
        const TrajectoryPoint* q = second.at_step(p.step);
        if (q == nullptr || p.step >= gamma_grid.size()) continue;
        if (std::abs(p.omega.real() - opts.omega0) > opts.zero_tol ||
            std::abs(q->omega.real() - opts.omega0) > opts.zero_tol) {
            continue;
        }
        g.push_back(gamma_grid[p.step]);
        a.push_back(p.omega.imag());
        b.push_back(q->omega.imag());
    }
    return fit_pair_threshold(g, a, b);
}

std::vector<BaselinePoint> baseline_trace(const std::vector<ModeSet>& sweep,
                                          std::span<const double> gamma_grid,
                                          const ReservoirGeometry& reservoir, double zero_tol) {
    if (sweep.size() != gamma_grid.size()) {
        throw DomainError("sweep and gamma grid have different lengths");
    }
    std::vector<BaselinePoint> out;
    out.reserve(sweep.size());
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        ReservoirGeometry g = reservoir;
        g.gamma = gamma_grid[i];
        std::vector<ZeroMode> zms = find_zero_modes(sweep[i], g.omega0, zero_tol, g);
        BaselinePoint p;
        p.gamma = gamma_grid[i];
        p.zero_mode_count = zms.size();
        auto it = std::min_element(zms.begin(), zms.end(), [](const ZeroMode& x, const ZeroMode& y) {
            return std::abs(x.omega.imag()) < std::abs(y.omega.imag());
        });
        if (it != zms.end()) p.mode = std::move(*it);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<double> zero_mode_onsets(const std::vector<BaselinePoint>& trace) {
    std::vector<double> out;
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].zero_mode_count != trace[i - 1].zero_mode_count) {
            out.push_back(0.5 * (trace[i].gamma + trace[i - 1].gamma));
        }
    }
    return out;
}

}  // namespace nhzm

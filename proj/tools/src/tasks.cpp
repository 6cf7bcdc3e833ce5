// Copyright 2026 The nhzm Authors
// SPDX-License-Identifier: Apache-2.0

#include "tasks.hpp"

#include <nhzm/nhzm.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

namespace nhzm::cli {

namespace {

ClassifyOptions classify_options(const json& o) {
    ClassifyOptions c;
    if (!o.contains("classify")) return c;
    const json& k = o.at("classify");
    c.alpha_tol = k.at("alpha_tol").get<double>();
    c.kappa_tol = k.at("kappa_tol").get<double>();
    c.r_tol = k.at("r_tol").get<double>();
    return c;
}

json fit_json(const LinearFit& f) {
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r_squared}, {"n", f.n}};
}

json regime_json(double gamma, const ZeroMode& zm, const RegimeReport& rep) {
    json j = {{"gamma", gamma},
              {"mode_index", zm.mode_index},
              {"omega", complex_json(zm.omega)},
              {"kappa_a", zm.kappa_a},
              {"kappa_b", zm.kappa_b},
              {"alpha", rep.alpha},
              {"r", rep.r},
              {"regime", std::string(to_string(rep.regime))},
              {"roots", {{"plus", complex_json(rep.roots.plus)}, {"minus", complex_json(rep.roots.minus)}}},
              {"fits", {{"A", fit_json(rep.fits[0])}, {"B", fit_json(rep.fits[1])}}},
              {"single_fit", fit_json(rep.single_fit)}};
    j["decay_rate"] = rep.decay_rate ? json(*rep.decay_rate) : json(nullptr);
    j["measured_decay"] = rep.measured_decay
                              ? json{{"A", (*rep.measured_decay)[0]}, {"B", (*rep.measured_decay)[1]}}
                              : json(nullptr);
    return j;
}

/// Unit max amplitude with the peak entry real and positive.
CVector normalized_profile(const CVector& psi) {
    Eigen::Index peak = 0;
    const double s = psi.cwiseAbs().maxCoeff(&peak);
    return psi * (std::abs(psi(peak)) / psi(peak)) / s;
}

std::string site_label(const LatticeSpec& spec, std::size_t i) {
    const Site& s = spec.sites()[i];
    if (spec.reservoir_range().contains(i)) {
        return s.onsite_imag > 0.0 ? "gain" : (s.onsite_imag < 0.0 ? "loss" : "neutral");
    }
    return s.sublattice == Sublattice::A ? "A" : "B";
}

double region_max(const CVector& psi, SiteRange r) {
    double m = 0.0;
    for (std::size_t i = r.begin; i < r.end; ++i) {
        m = std::max(m, std::abs(psi(static_cast<Eigen::Index>(i))));
    }
    return m;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    g.back() = b;
    return g;
}

// ---------------------------------------------------------------------------

json run_spectrum(const Scenario& sc, const OutputDir& out) {
    const json& o = sc.options();
    const CoupledChainParams p = sc.lattice();
    const LatticeSpec spec = build_coupled_chain(p);
    const ModeSet ms = eigendecompose(assemble_hamiltonian(spec));
    const ReservoirGeometry geo = reservoir_geometry(spec);
    const double zero_tol = o.at("zero_tol").get<double>();
    const double defect = o.at("defect_threshold").get<double>();

    std::vector<OutputDir::Row> rows;
    std::size_t n_zero = 0;
    json defects = json::array();
    for (std::size_t mu = 0; mu < ms.size(); ++mu) {
        const Complex w = ms.eigenvalue(mu);
        const bool zero = std::abs(w.real() - p.onsite) <= zero_tol;
        n_zero += zero ? 1 : 0;
        if (std::abs(w.real() - p.onsite) > defect) defects.push_back(complex_json(w));
        const ModeDiagnostics& d = ms.diagnostics(mu);
        rows.push_back({std::to_string(mu), num(w.real()), num(w.imag()), zero ? "1" : "0",
                        d.near_defective ? "1" : "0", num(d.min_gap), num(d.residual)});
    }
    out.write_csv("spectrum.csv", {"mode", "re", "im", "zero_mode", "near_defective", "min_gap", "residual"},
                  rows,
                  {"mode: index in Re-then-Im order; zero_mode: |Re omega - omega0| <= zero_tol",
                   "min_gap: distance to the nearest other eigenvalue; residual: ||H psi - omega psi||"});

    const ClassifyOptions copts = classify_options(o);
    json zms = json::array();
    std::size_t n_linear = 0;
    for (const ZeroMode& zm : find_zero_modes(ms, p.onsite, zero_tol, geo)) {
        const RegimeReport rep = classify_regime(zm, geo, copts);
        n_linear += rep.regime == Regime::LinearlyLocalized ? 1 : 0;
        zms.push_back(regime_json(p.gamma, zm, rep));
    }
    const PairingReport nhph = check_spectral_symmetry(ms, p.onsite, SymmetryKind::NHPH, 1e-8 * std::max(1.0, ms.matrix_norm()));
    json res = {{"n_modes", ms.size()},
                {"zero_mode_count", n_zero},
                {"defect_count", defects.size()},
                {"defect_modes", defects},
                {"nhph_symmetric", nhph.symmetric()},
                {"nhph_max_pair_error", nhph.max_pair_error},
                {"linearly_localized_count", n_linear},
                {"zero_modes", zms}};
    out.write_json("zero_modes.json", {{"zero_modes", zms}});
    return res;
}

json run_mode_profile(const Scenario& sc, const OutputDir& out) {
    const json& o = sc.options();
    const CoupledChainParams p = sc.lattice();
    const LatticeSpec spec = build_coupled_chain(p);
    const Hamiltonian h = assemble_hamiltonian(spec);
    const ModeSet ms = eigendecompose(h);
    const ReservoirGeometry geo = reservoir_geometry(spec);
    const double zero_tol = o.at("zero_tol").get<double>();

    std::optional<ZeroMode> zm;
    std::size_t index = 0;
    if (o.at("mode").is_string()) {
        zm = baseline_zero_mode(ms, p.onsite, zero_tol, geo);
        if (!zm) throw DomainError("no zero mode within the zero-mode tolerance");
        index = zm->mode_index;
    } else {
        index = o.at("mode").get<std::size_t>();
        if (index >= ms.size()) throw DomainError("mode index " + std::to_string(index) + " out of range");
        for (ZeroMode& z : find_zero_modes(ms, p.onsite, zero_tol, geo)) {
            if (z.mode_index == index) zm = std::move(z);
        }
    }
    const CVector psi = normalized_profile(ms.right_vector(index));

    json res = {{"gamma", p.gamma}, {"t_prime", p.t_prime}, {"mode_index", index},
                {"omega", complex_json(ms.eigenvalue(index))}, {"zero_mode", zm.has_value()}};
    const StaggerReport st = check_stagger_phase(psi, spec.partition());
    res["stagger"] = {{"staggered", st.staggered},
                      {"in_phase_per_sublattice", st.in_phase_per_sublattice},
                      {"max_violation", st.max_violation}};
    res["peak_reservoir"] = region_max(psi, geo.sites) / region_max(psi, spec.system_range());

    if (zm) {
        zm->wavefunction = psi;
        const RegimeReport rep = classify_regime(*zm, geo, classify_options(o));
        const json rj = regime_json(p.gamma, *zm, rep);
        out.write_json("regime.json", rj);
        res["regime"] = rj;
        res["recurrence_residual"] = verify_recurrence(psi, geo.sites, zm->alpha).max_residual;
        res["one_step_residual"] = verify_one_step(h, psi, zm->omega, geo.sites).max_residual;
        res["predicted_linear_peak"] = linear_peak_amplitude(p.t_prime, geo.t_a, geo.sites.size());
    }

    std::optional<CVector> pert;
    if (o.at("perturbative").get<bool>() && zm) {
        const PerturbationComparison cmp = perturbation_vs_exact(spec);
        const double s = cmp.exact.cwiseAbs().maxCoeff();
        pert = cmp.perturbed / s;
        res["perturbation"] = {{"vector_error", cmp.vector_error},
                               {"energy_error", cmp.energy_error},
                               {"omega_perturbed", complex_json(cmp.omega_perturbed)},
                               {"overlap", cmp.overlap},
                               {"matches_selected_mode", cmp.exact_index == index}};
    }

    std::vector<OutputDir::Row> rows;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const Complex v = psi(static_cast<Eigen::Index>(i));
        OutputDir::Row r{std::to_string(i), spec.reservoir_range().contains(i) ? "reservoir" : "system",
                         site_label(spec, i), num(v.real()), num(v.imag()), num(std::abs(v))};
        if (pert) r.push_back(num(std::abs((*pert)(static_cast<Eigen::Index>(i)))));
        rows.push_back(std::move(r));
    }
    OutputDir::Row header{"site", "region", "label", "re", "im", "abs_exact"};
    if (pert) header.push_back("abs_pert");
    out.write_csv("profile.csv", header, rows,
                  {"exact eigenvector scaled to unit max amplitude, peak entry real positive",
                   "label: system sublattice, or gain/loss for reservoir sites",
                   "abs_pert: |psi0 + psi1| from first-order theory on the same scale"});
    return res;
}

json run_sweep(const Scenario& sc, const OutputDir& out) {
    const json& o = sc.options();
    const CoupledChainParams base = sc.lattice();
    const json& g = o.at("gamma");
    const std::vector<double> grid =
        linspace(g.at("start").get<double>(), g.at("stop").get<double>(), g.at("num").get<std::size_t>());
    const SpecTemplate tmpl = [base](double gamma) {
        CoupledChainParams p = base;
        p.gamma = gamma;
        return build_coupled_chain(p);
    };
    const std::vector<ModeSet> sweep = sweep_gamma(tmpl, grid);

    TrackOptions topts;
    topts.omega0 = base.onsite;
    topts.zero_tol = o.at("zero_tol").get<double>();
    topts.min_overlap = o.at("min_overlap").get<double>();
    const TrackingResult tr = track_modes(sweep, topts);

    std::vector<OutputDir::Row> trows;
    for (const ModeTrajectory& t : tr.trajectories) {
        for (const TrajectoryPoint& pt : t.points) {
            trows.push_back({std::to_string(t.label), std::to_string(pt.step), num(grid[pt.step]),
                             num(pt.omega.real()), num(pt.omega.imag()), num(pt.overlap)});
        }
    }
    out.write_csv("trajectories.csv", {"label", "step", "gamma", "re", "im", "overlap"}, trows,
                  {"label: mode numbering at the largest gamma (zero modes by descending |Im|), "
                   "labels above the mode count continue split trajectories",
                   "overlap: |<psi(step)|psi(step+1)>| used for matching"});

    ReservoirGeometry geo = reservoir_geometry(tmpl(grid.front()));
    const std::vector<BaselinePoint> trace = baseline_trace(sweep, grid, geo, topts.zero_tol);
    const ClassifyOptions copts = classify_options(o);

    std::vector<OutputDir::Row> brows;
    std::vector<std::pair<double, std::string>> regimes;
    std::vector<std::pair<double, double>> alphas;
    for (const BaselinePoint& b : trace) {
        if (!b.mode) {
            brows.push_back({num(b.gamma), std::to_string(b.zero_mode_count), "", "", "", "", "", "", ""});
            continue;
        }
        ReservoirGeometry gg = geo;
        gg.gamma = b.gamma;
        const RegimeReport rep = classify_regime(*b.mode, gg, copts);
        const double rel = b.gamma > 0.0 ? std::abs(b.mode->r + b.gamma * b.gamma) / (b.gamma * b.gamma) : 0.0;
        regimes.emplace_back(b.gamma, std::string(to_string(rep.regime)));
        alphas.emplace_back(b.gamma, b.mode->alpha);
        brows.push_back({num(b.gamma), std::to_string(b.zero_mode_count), num(b.mode->omega.imag()),
                         num(b.mode->kappa_a), num(b.mode->kappa_b), num(b.mode->r), num(rel),
                         num(b.mode->alpha), std::string(to_string(rep.regime))});
    }
    out.write_csv("baseline.csv",
                  {"gamma", "zero_modes", "im", "kappa_a", "kappa_b", "r", "r_rel_dev", "alpha", "regime"},
                  brows,
                  {"baseline: the zero mode with Im omega closest to 0 at each gamma",
                   "r_rel_dev: |r + gamma^2| / gamma^2 for unit reservoir coupling"});

    json res = {{"n_steps", grid.size()}, {"tracking_warnings", tr.warnings.size()}};
    const std::vector<double> onsets = zero_mode_onsets(trace);
    res["zero_mode_onsets"] = onsets;

    // Baseline r against -gamma^2 on the central part of each interval.
    const double w = o.at("baseline_window").get<double>();
    double worst = 0.0;
    json windows = json::array();
    for (std::size_t i = 0; i + 1 < onsets.size(); ++i) {
        const double a = onsets[i];
        const double b = onsets[i + 1];
        const double lo = a + 0.5 * (1.0 - w) * (b - a);
        const double hi = b - 0.5 * (1.0 - w) * (b - a);
        double m = 0.0;
        for (const BaselinePoint& pt : trace) {
            if (pt.mode && pt.gamma >= lo && pt.gamma <= hi && pt.gamma > 0.0) {
                m = std::max(m, std::abs(pt.mode->r + pt.gamma * pt.gamma) / (pt.gamma * pt.gamma));
            }
        }
        windows.push_back({{"from", lo}, {"to", hi}, {"max_rel_dev", m}});
        worst = std::max(worst, m);
    }
    res["baseline_r_windows"] = windows;
    res["baseline_r_max_rel_dev"] = worst;

    json changes = json::array();
    for (std::size_t i = 1; i < regimes.size(); ++i) {
        if (regimes[i].second != regimes[i - 1].second) {
            changes.push_back({{"gamma", regimes[i].first}, {"from", regimes[i - 1].second},
                               {"to", regimes[i].second}});
        }
    }
    res["regime_changes"] = changes;
    if (!regimes.empty()) res["regime_at_start"] = regimes.front().second;

    auto crossings = [&](double level) {
        json c = json::array();
        for (std::size_t i = 1; i < alphas.size(); ++i) {
            const double d0 = alphas[i - 1].second - level;
            const double d1 = alphas[i].second - level;
            if (d0 * d1 < 0.0) {
                const double t = d0 / (d0 - d1);
                c.push_back(alphas[i - 1].first + t * (alphas[i].first - alphas[i - 1].first));
            }
        }
        return c;
    };
    const CriticalGammas cg = critical_gammas(geo.t_a, geo.t_b);
    res["alpha_crossings"] = {{"plus_two", crossings(2.0)}, {"minus_two", crossings(-2.0)}};
    res["critical_gammas_im0"] = {{"alpha_plus_two", cg.alpha_plus_two},
                                  {"alpha_minus_two", cg.alpha_minus_two}};

    if (o.contains("pair_fit")) {
        const int a = o.at("pair_fit")[0].get<int>();
        const int b = o.at("pair_fit")[1].get<int>();
        json pf = {{"labels", {a, b}}};
        try {
            pf["gamma_threshold"] = fit_pair_threshold(tr.by_label(a), tr.by_label(b), grid, topts);
        } catch (const FitError& e) {
            pf["error"] = e.what();
        } catch (const std::out_of_range& e) {
            pf["error"] = e.what();
        }
        res["pair_fit"] = pf;
    }
    return res;
}

json run_bands(const Scenario& sc, const OutputDir& out) {
    const json& o = sc.options();
    BandParams bp;
    bp.t_a = o.at("t_a").get<double>();
    bp.t_b = o.at("t_b").get<double>();
    bp.onsite = o.at("onsite").get<double>();
    bp.n_k = o.at("n_k").get<std::size_t>();

    std::vector<OutputDir::Row> rows;
    json eps = json::array();
    json per = json::array();
    for (const json& gj : o.at("gammas")) {
        bp.gamma = gj.get<double>();
        const BlochScan s = band_energies(bp);
        double min_gap = std::numeric_limits<double>::infinity();
        double k_min = 0.0;
        double max_im = 0.0;
        double max_re_dev = 0.0;
        for (std::size_t i = 0; i < s.k.size(); ++i) {
            const Complex a = s.omega_plus[i];
            const Complex b = s.omega_minus[i];
            rows.push_back({num(bp.gamma), num(s.k[i]), num(a.real()), num(a.imag()), num(b.real()), num(b.imag())});
            if (std::abs(a - b) < min_gap) {
                min_gap = std::abs(a - b);
                k_min = s.k[i];
            }
            max_im = std::max({max_im, std::abs(a.imag()), std::abs(b.imag())});
            max_re_dev = std::max({max_re_dev, std::abs(a.real() - bp.onsite), std::abs(b.real() - bp.onsite)});
        }
        json pts = json::array();
        for (const ExceptionalPoint& ep : s.eps.points) {
            pts.push_back({{"k", ep.k},
                           {"coalesced_vector", {complex_json(ep.coalesced_vector(0)), complex_json(ep.coalesced_vector(1))}},
                           {"coalescence_measure", ep.coalescence.measure},
                           {"eigenvalue_gap", ep.coalescence.gap}});
        }
        eps.push_back({{"gamma", bp.gamma}, {"points", pts},
                       {"degenerate_band_warning", s.eps.degenerate_band_warning}});
        per.push_back({{"gamma", bp.gamma}, {"min_gap", min_gap}, {"k_at_min_gap", k_min},
                       {"bands_real", max_im <= 1e-12}, {"flat_real_part", max_re_dev <= 1e-12},
                       {"ep_count", s.eps.points.size()}});
    }
    out.write_csv("bands.csv", {"gamma", "k", "re_plus", "im_plus", "re_minus", "im_minus"}, rows,
                  {"k in units of 1/lattice constant; omega_+- = omega0 +- sqrt(radicand)"});
    out.write_json("eps.json", {{"exceptional_points", eps}});
    return {{"t_a", bp.t_a}, {"t_b", bp.t_b}, {"per_gamma", per}, {"exceptional_points", eps}};
}

json run_ensemble(const Scenario& sc, const OutputDir& out) {
    const json& o = sc.options();
    const CoupledChainParams p = sc.lattice();
    const LatticeSpec spec = build_coupled_chain(p);
    const ModeSet ms = eigendecompose(assemble_hamiltonian(spec));
    const ReservoirGeometry geo = reservoir_geometry(spec);
    const std::optional<ZeroMode> zm = baseline_zero_mode(ms, p.onsite, o.at("zero_tol").get<double>(), geo);
    if (!zm) throw DomainError("no zero mode within the zero-mode tolerance");

    EnsembleOptions eo;
    eo.sigma = o.at("sigma").get<double>();
    eo.n = o.at("n").get<std::size_t>();
    eo.periods = o.contains("amplification")
                     ? periods_for_amplification(ms, *zm, o.at("amplification").get<double>())
                     : o.at("periods").get<double>();
    eo.seed = sc.seed;
    eo.normalization = o.at("normalization") == "l2" ? FinalNorm::TwoNorm : FinalNorm::MaxAmplitude;
    eo.threads = o.at("threads").get<unsigned>();
    const EnsembleResult r = ensemble_experiment(spec, *zm, eo);

    std::vector<OutputDir::Row> rows;
    for (std::size_t j = 0; j < r.mean_abs_profile.size(); ++j) {
        rows.push_back({std::to_string(geo.sites.begin + j), num(r.mean_abs_profile[j]), num(r.std_profile[j])});
    }
    out.write_csv("ensemble.csv", {"site", "mean_abs", "std"}, rows,
                  {"per realisation: final state scaled to unit max amplitude (or unit 2-norm)",
                   "std: population standard deviation over realisations"});
    json res = {{"seed", r.seed},
                {"n", r.n_realizations},
                {"sigma", r.sigma},
                {"periods", r.duration},
                {"mean", r.mean_abs_profile},
                {"std", r.std_profile},
                {"r2", r.r_squared},
                {"amplification", r.amplification},
                {"zero_mode_omega", complex_json(zm->omega)}};
    out.write_json("ensemble.json", res);
    return res;
}

json run_perturbation(const Scenario& sc, const OutputDir& out) {
    const json& o = sc.options();
    const CoupledChainParams base = sc.lattice();
    const double min_overlap = o.at("min_overlap").get<double>();

    std::vector<OutputDir::Row> rows;
    std::vector<OutputDir::Row> prof;
    json per = json::array();
    for (const json& gj : o.at("gammas")) {
        CoupledChainParams p = base;
        p.gamma = gj.get<double>();
        std::vector<double> lx;
        std::vector<double> ly;
        double max_e1 = 0.0;
        for (const json& tj : o.at("t_primes")) {
            p.t_prime = tj.get<double>();
            const LatticeSpec spec = build_coupled_chain(p);
            const PerturbationSetup setup = make_junction_setup(spec);
            double e1 = 0.0;
            for (std::size_t mu = 0; mu < setup.modes.size(); ++mu) {
                if (!setup.modes.near_defective(mu)) e1 = std::max(e1, std::abs(first_order_energy(setup, mu)));
            }
            max_e1 = std::max(max_e1, e1);
            const PerturbationComparison c = perturbation_vs_exact(spec, std::nullopt, min_overlap);
            rows.push_back({num(p.gamma), num(p.t_prime), num(c.vector_error), num(c.energy_error), num(e1)});
            const double s = c.exact.cwiseAbs().maxCoeff();
            for (Eigen::Index i = 0; i < c.exact.size(); ++i) {
                prof.push_back({num(p.gamma), num(p.t_prime), std::to_string(i), num(std::abs(c.exact(i)) / s),
                                num(std::abs(c.perturbed(i)) / s)});
            }
            lx.push_back(std::log(p.t_prime));
            ly.push_back(std::log(c.vector_error));
        }
        per.push_back({{"gamma", p.gamma},
                       {"loglog_slope", fit_line(lx, ly).slope},
                       {"max_first_order_energy", max_e1}});
    }
    out.write_csv("perturbation.csv", {"gamma", "t_prime", "vector_error", "energy_error", "max_first_order_energy"},
                  rows, {"vector_error: ||c e - p|| / ||p|| for the zero mode, c the least-squares scale"});
    out.write_csv("perturbation_profiles.csv", {"gamma", "t_prime", "site", "abs_exact", "abs_pert"}, prof,
                  {"zero mode, both columns scaled by max |exact|"});
    return {{"per_gamma", per}};
}

}  // namespace

json run_task(const Scenario& sc, const OutputDir& out) {
    static const std::map<std::string, std::function<json(const Scenario&, const OutputDir&)>> tasks = {
        {"spectrum", run_spectrum}, {"mode-profile", run_mode_profile}, {"sweep", run_sweep},
        {"bands", run_bands},       {"ensemble", run_ensemble},         {"perturbation", run_perturbation}};
    return tasks.at(sc.task)(sc, out);
}

// ---------------------------------------------------------------------------

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string omega_str(const json& w) {
    const double re = w.at("re").get<double>();
    const double im = w.at("im").get<double>();
    if (std::abs(re) < 5e-5) return fmt("%.4fi", im);
    return fmt("%.4f", re) + (im < 0 ? " - " : " + ") + fmt("%.4fi", std::abs(im));
}

std::string regime_line(const json& r) {
    const std::string name = r.at("regime").get<std::string>();
    std::string s = name + ", alpha=" + fmt("%.3f", r.at("alpha").get<double>());
    if (name == "ExponentiallyLocalized" && !r.at("decay_rate").is_null()) {
        s += ", decay ln|b+|=" + fmt("%.3f", r.at("decay_rate").get<double>()) + " per sublattice step";
        if (!r.at("measured_decay").is_null()) {
            s += " (fit " + fmt("%.3f", r.at("measured_decay").at("A").get<double>()) + " / " +
                 fmt("%.3f", r.at("measured_decay").at("B").get<double>()) + ")";
        }
    } else {
        s += ", R^2=" + fmt("%.5f", r.at("single_fit").at("r2").get<double>());
    }
    return s;
}

}  // namespace

std::string format_report(const json& summary) {
    std::ostringstream os;
    const json& sc = summary.at("metadata").at("scenario");
    const std::string task = sc.at("task").get<std::string>();
    const json& r = summary.at("results");
    os << sc.value("name", std::string("scenario")) << " (" << task << "), nhzm "
       << summary.at("metadata").at("version").get<std::string>() << '\n';

    if (task == "mode-profile") {
        os << "  mode " << r.at("mode_index") << ": omega = " << omega_str(r.at("omega")) << '\n';
        if (r.contains("regime")) {
            os << "  " << regime_line(r.at("regime")) << '\n';
            os << "  kappa_A=" << fmt("%.4f", r.at("regime").at("kappa_a").get<double>())
               << " kappa_B=" << fmt("%.4f", r.at("regime").at("kappa_b").get<double>())
               << "  recurrence residual " << fmt("%.1e", r.at("recurrence_residual").get<double>()) << '\n';
        }
        os << "  staggered=" << r.at("stagger").at("staggered")
           << " in_phase=" << r.at("stagger").at("in_phase_per_sublattice")
           << "  reservoir peak " << fmt("%.4f", r.at("peak_reservoir").get<double>());
        if (r.contains("predicted_linear_peak")) {
            os << " (linear-tail estimate " << fmt("%.4f", r.at("predicted_linear_peak").get<double>()) << ")";
        }
        os << '\n';
        if (r.contains("perturbation")) {
            os << "  first-order theory: vector error " << fmt("%.2e", r.at("perturbation").at("vector_error").get<double>())
               << ", energy error " << fmt("%.2e", r.at("perturbation").at("energy_error").get<double>()) << '\n';
        }
    } else if (task == "spectrum") {
        os << "  " << r.at("n_modes") << " modes, " << r.at("zero_mode_count") << " zero modes, "
           << r.at("defect_count") << " with |Re(omega - omega0)| above the defect threshold\n";
        for (const json& d : r.at("defect_modes")) os << "    defect mode " << omega_str(d) << '\n';
        for (const json& z : r.at("zero_modes")) {
            os << "    zero mode " << omega_str(z.at("omega")) << ": " << regime_line(z) << '\n';
        }
        os << "  NHPH symmetric: " << r.at("nhph_symmetric") << ", LinearlyLocalized modes: "
           << r.at("linearly_localized_count") << '\n';
    } else if (task == "sweep") {
        os << "  " << r.at("n_steps") << " gamma steps, " << r.at("tracking_warnings") << " tracking splits\n";
        os << "  zero-mode count changes near gamma =";
        for (const json& g : r.at("zero_mode_onsets")) os << ' ' << fmt("%.3f", g.get<double>());
        os << "\n  baseline |r + gamma^2|/gamma^2 <= " << fmt("%.4f", r.at("baseline_r_max_rel_dev").get<double>())
           << " between changes\n";
        if (r.contains("regime_at_start")) os << "  regime at start: " << r.at("regime_at_start").get<std::string>() << '\n';
        for (const json& c : r.at("regime_changes")) {
            os << "    gamma " << fmt("%.4f", c.at("gamma").get<double>()) << ": " << c.at("from").get<std::string>()
               << " -> " << c.at("to").get<std::string>() << '\n';
        }
        os << "  baseline alpha = +2 at gamma =";
        for (const json& g : r.at("alpha_crossings").at("plus_two")) os << ' ' << fmt("%.3f", g.get<double>());
        os << "; alpha = -2 at gamma =";
        for (const json& g : r.at("alpha_crossings").at("minus_two")) os << ' ' << fmt("%.3f", g.get<double>());
        os << "\n  Im omega = 0 prediction: alpha=+2 at " << fmt("%.3f", r.at("critical_gammas_im0").at("alpha_plus_two").get<double>())
           << ", alpha=-2 at " << fmt("%.3f", r.at("critical_gammas_im0").at("alpha_minus_two").get<double>()) << '\n';
        if (r.contains("pair_fit")) {
            const json& pf = r.at("pair_fit");
            os << "  pair " << pf.at("labels")[0] << "," << pf.at("labels")[1] << " threshold: ";
            if (pf.contains("gamma_threshold")) {
                os << fmt("%.4f", pf.at("gamma_threshold").get<double>()) << '\n';
            } else {
                os << "fit failed (" << pf.at("error").get<std::string>() << ")\n";
            }
        }
    } else if (task == "bands") {
        for (const json& g : r.at("per_gamma")) {
            os << "  gamma " << fmt("%.3f", g.at("gamma").get<double>()) << ": min gap "
               << fmt("%.2e", g.at("min_gap").get<double>()) << " at k=" << fmt("%.4f", g.at("k_at_min_gap").get<double>())
               << (g.at("bands_real").get<bool>() ? ", real bands" : "")
               << (g.at("flat_real_part").get<bool>() ? ", flat Re" : "") << '\n';
        }
        for (const json& e : r.at("exceptional_points")) {
            for (const json& p : e.at("points")) {
                os << "    EP gamma=" << fmt("%.3f", e.at("gamma").get<double>()) << " k=" << fmt("%.4f", p.at("k").get<double>())
                   << " coalescence " << fmt("%.1e", p.at("coalescence_measure").get<double>()) << '\n';
            }
            if (e.at("degenerate_band_warning").get<bool>()) {
                os << "    gamma=" << fmt("%.3f", e.at("gamma").get<double>()) << ": degenerate bands, not an EP\n";
            }
        }
    } else if (task == "ensemble") {
        os << "  n=" << r.at("n") << " sigma=" << fmt("%.3g", r.at("sigma").get<double>()) << " seed=" << r.at("seed")
           << " periods=" << fmt("%.4g", r.at("periods").get<double>()) << '\n';
        os << "  ensemble-mean linear fit R^2=" << fmt("%.5f", r.at("r2").get<double>())
           << ", dominant-mode amplification " << fmt("%.3g", r.at("amplification").get<double>()) << '\n';
    } else if (task == "perturbation") {
        for (const json& g : r.at("per_gamma")) {
            os << "  gamma " << fmt("%.3f", g.at("gamma").get<double>()) << ": log-log slope "
               << fmt("%.3f", g.at("loglog_slope").get<double>()) << ", max |first-order energy| "
               << fmt("%.1e", g.at("max_first_order_energy").get<double>()) << '\n';
        }
    }
    return os.str();
}

}  // namespace nhzm::cli

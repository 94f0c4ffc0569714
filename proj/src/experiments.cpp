#include "zetalab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "zetalab/asymptotics.hpp"
#include "zetalab/expsums.hpp"
#include "zetalab/kernel_ie.hpp"
#include "zetalab/parallel.hpp"
#include "zetalab/special_functions.hpp"

namespace zetalab::cli {

using nlohmann::json;

namespace {

constexpr int schema_version = 1;

std::string fmt_num(const json& v) {
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(12) << v.get<double>();
        return os.str();
    }
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

json config_json(const ExperimentConfig& cfg) {
    json j;
    j["sigma"] = cfg.sigma;
    j["t_grid"] = cfg.t_grid;
    j["deltas"] = {cfg.deltas.d1, cfg.deltas.d2, cfg.deltas.d3, cfg.deltas.d4};
    j["threads"] = cfg.threads > 0 ? cfg.threads : max_threads();
    j["seed"] = cfg.seed;
    json tols = json::object();
    for (const auto& [k, v] : cfg.tolerances) tols[k] = v;
    j["tolerances"] = tols;
    return j;
}

std::vector<double> grid_or(const ExperimentConfig& cfg, std::vector<double> fallback) {
    return cfg.t_grid.empty() ? fallback : cfg.t_grid;
}

double slope_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    // least-squares slope of log|y| against log x
    double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double lx = std::log10(x[i]);
        double ly = std::log10(std::max(y[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

void write_report(const Report& rep, Format format, std::ostream& os) {
    if (format == Format::csv) {
        for (std::size_t i = 0; i < rep.columns.size(); ++i)
            os << rep.columns[i] << (i + 1 < rep.columns.size() ? "," : "");
        os << "\n";
        for (const json& row : rep.rows) {
            for (std::size_t i = 0; i < rep.columns.size(); ++i) {
                os << fmt_num(row.value(rep.columns[i], json()));
                os << (i + 1 < rep.columns.size() ? "," : "");
            }
            os << "\n";
        }
        return;
    }
    if (format == Format::json) {
        json doc;
        doc["schema_version"] = schema_version;
        doc["command"] = rep.command;
        doc["config"] = rep.config;
        doc["columns"] = rep.columns;
        doc["rows"] = rep.rows;
        doc["summary"] = rep.summary;
        doc["exit_code"] = rep.exit_code;
        os << doc.dump(2) << "\n";
        return;
    }
    // table
    std::vector<std::size_t> width(rep.columns.size());
    std::vector<std::vector<std::string>> cells;
    for (std::size_t i = 0; i < rep.columns.size(); ++i)
        width[i] = rep.columns[i].size();
    for (const json& row : rep.rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < rep.columns.size(); ++i) {
            std::string s = fmt_num(row.value(rep.columns[i], json()));
            width[i] = std::max(width[i], s.size());
            line.push_back(s);
        }
        cells.push_back(std::move(line));
    }
    os << "# " << rep.command << "\n";
    for (std::size_t i = 0; i < rep.columns.size(); ++i)
        os << std::left << std::setw(int(width[i] + 2)) << rep.columns[i];
    os << "\n";
    for (const auto& line : cells) {
        for (std::size_t i = 0; i < line.size(); ++i)
            os << std::left << std::setw(int(width[i] + 2)) << line[i];
        os << "\n";
    }
    for (auto it = rep.summary.begin(); it != rep.summary.end(); ++it)
        os << it.key() << " = " << fmt_num(it.value()) << "\n";
}

void emit_report(const Report& rep, const ExperimentConfig& cfg) {
    if (cfg.out_path.empty()) {
        write_report(rep, cfg.format, std::cout);
        return;
    }
    std::ofstream os(cfg.out_path);
    if (!os) throw std::runtime_error("cannot open output file " + cfg.out_path);
    write_report(rep, cfg.format, os);
}

Report run_verify_ie(const ExperimentConfig& cfg) {
    cfg.validate();
    set_thread_count(cfg.threads);
    Report rep;
    rep.command = "verify-ie";
    rep.config = config_json(cfg);
    rep.columns = {"sigma", "t", "d1", "d2", "d3", "d4",
                   "lhs",   "rhs", "abs_err", "rel_err", "tol", "status"};
    double tol = cfg.tol("quadrature", 1e-3);
    double bound = cfg.tol("rel_err", 5e-2);
    std::vector<double> ts = grid_or(cfg, {50.0, 100.0, 200.0});
    std::vector<double> sigmas =
        cfg.t_grid.empty() ? std::vector<double>{0.3, 0.5, 0.7} : std::vector<double>{cfg.sigma};

    std::vector<std::pair<double, double>> points;
    for (double s : sigmas)
        for (double t : ts) points.emplace_back(s, t);

    std::vector<json> rows(points.size());
    std::vector<int> fail(points.size(), 0);
    std::vector<std::string> row_errors(points.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < std::int64_t(points.size()); ++i) {
        auto [s, t] = points[std::size_t(i)];
        StripPoint p{s, t};
        ResidualReport r;
        try {
            r = kernel::ie_residual(p, cfg.deltas, tol);
        } catch (const std::exception& e) {
            // exceptions cannot leave the parallel region; surface them after
            row_errors[std::size_t(i)] = e.what();
            continue;
        }
        json row;
        row["sigma"] = s;
        row["t"] = t;
        row["d1"] = cfg.deltas.d1;
        row["d2"] = cfg.deltas.d2;
        row["d3"] = cfg.deltas.d3;
        row["d4"] = cfg.deltas.d4;
        row["lhs"] = r.lhs.real();
        row["rhs"] = r.rhs.real();
        row["abs_err"] = r.abs_err;
        row["rel_err"] = r.rel_err;
        row["tol"] = bound;
        row["oracle"] = "exact_identity";
        bool ok = r.rel_err <= bound;
        row["status"] = ok ? "pass" : "fail";
        rows[std::size_t(i)] = row;
        fail[std::size_t(i)] = ok ? 0 : 1;
    }
    for (const std::string& err : row_errors)
        if (!err.empty()) throw std::domain_error(err);
    rep.rows.assign(rows.begin(), rows.end());
    int failures = 0;
    for (int f : fail) failures += f;
    rep.summary["failures"] = failures;
    rep.exit_code = failures == 0 ? 0 : 2;
    return rep;
}

Report run_appendix_a(const ExperimentConfig& cfg) {
    cfg.validate();
    set_thread_count(cfg.threads);
    Report rep;
    rep.command = "appendix-a";
    rep.config = config_json(cfg);
    rep.columns = {"re_A",   "im_A",   "lhs_re",  "lhs_im",       "rhs_re", "rhs_im",
                   "rel_err", "full_rel_err", "status"};
    double t = cfg.t_grid.empty() ? 1e7 : cfg.t_grid.front();
    double d = 0.25;
    double gate = cfg.tol("rel_err", 1e-6);
    double qtol = cfg.tol("quadrature", 1e-10);
    StripPoint p{cfg.sigma, t};
    const cx As[4] = {{2, 3}, {-2, 3}, {-2, -3}, {2, -3}};
    int failures = 0;
    for (cx A : As) {
        // the table compares the closed form against the reduced kernel; the
        // full integrand differs by a real O(t^{2d-1}) term, reported alongside
        QuadResult lhs = asym::J4_tilde_numeric(p, d, d, A, qtol, true);
        QuadResult full = asym::J4_tilde_numeric(p, d, d, A, qtol, false);
        cx rhs = asym::J4_tilde_closed(t, d, A);
        double re = std::abs(rhs - lhs.value) / std::abs(rhs);
        json row;
        row["re_A"] = A.real();
        row["im_A"] = A.imag();
        row["lhs_re"] = lhs.value.real();
        row["lhs_im"] = lhs.value.imag();
        row["rhs_re"] = rhs.real();
        row["rhs_im"] = rhs.imag();
        row["rel_err"] = re;
        row["full_rel_err"] = std::abs(rhs - full.value) / std::abs(rhs);
        row["tol"] = gate;
        row["oracle"] = "closed_form";
        bool ok = re <= gate;
        row["status"] = ok ? "pass" : "fail";
        failures += ok ? 0 : 1;
        rep.rows.push_back(row);
    }
    rep.summary["t"] = t;
    rep.summary["delta"] = d;
    rep.summary["failures"] = failures;
    rep.exit_code = failures == 0 ? 0 : 2;
    return rep;
}

Report run_appendix_b(const ExperimentConfig& cfg) {
    cfg.validate();
    set_thread_count(cfg.threads);
    Report rep;
    rep.command = "appendix-b";
    rep.config = config_json(cfg);
    rep.columns = {"a", "abs_lhs", "abs_rhs", "rel_err"};
    double t = cfg.t_grid.empty() ? 6e7 + 0.45 : cfg.t_grid.front();
    double d3 = 0.25;
    double qtol = cfg.tol("quadrature", 1e-9);
    double td3 = std::pow(t, d3);

    std::vector<double> sweep;
    for (int k = 1; k <= 10; ++k) sweep.push_back(0.6333 * double(k) / 10.0); // (0, 2/3)
    for (int k = 0; k < 10; ++k) sweep.push_back(4.0 / 3.0 + 0.02 + (2.0 - 4.0 / 3.0 - 0.05) * double(k) / 9.0);

    for (double a : sweep) {
        double M = a / td3;
        json row;
        row["a"] = a;
        try {
            QuadResult lhs = asym::E4_numeric(t, d3, M, qtol);
            asym::E4Parts rhs = asym::E4_decomposed(t, d3, M);
            row["abs_lhs"] = std::abs(lhs.value);
            row["abs_rhs"] = std::abs(rhs.total);
            row["rel_err"] = std::abs(rhs.total - lhs.value) / std::abs(lhs.value);
        } catch (const transition_zone_error&) {
            continue; // rows near a = 1 are excluded by design
        }
        rep.rows.push_back(row);
    }
    rep.summary["t"] = t;
    rep.summary["d3"] = d3;
    rep.summary["oracle"] = "contour_quadrature";
    rep.exit_code = 0;
    return rep;
}

Report run_identities(const ExperimentConfig& cfg) {
    cfg.validate();
    set_thread_count(cfg.threads);
    Report rep;
    rep.command = "identities";
    rep.config = config_json(cfg);
    rep.columns = {"name", "params", "rel_residual", "limit", "status"};
    double gate = cfg.tol("rel_err", 1e-10);
    int failures = 0;

    auto push = [&](const std::string& name, const std::string& params, double rel) {
        json row;
        row["name"] = name;
        row["params"] = params;
        row["rel_residual"] = rel;
        row["limit"] = gate;
        row["oracle"] = "exact_identity";
        bool ok = rel <= gate;
        row["status"] = ok ? "pass" : "fail";
        failures += ok ? 0 : 1;
        rep.rows.push_back(row);
    };

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<std::int64_t> npick(1, 200);
    for (int i = 0; i < 50; ++i) {
        cx u{unif(rng), 8.0 * unif(rng)};
        cx v{unif(rng), 8.0 * unif(rng)};
        std::int64_t N = npick(rng);
        ResidualReport r = sums::check_fg_identity(u, v, N);
        std::ostringstream ps;
        ps << "u=" << u << " v=" << v << " N=" << N;
        push("fg_swap", ps.str(), r.rel_err);
    }

    std::vector<double> ts = grid_or(cfg, {50.0, 150.0, 600.0});
    for (double t : ts) {
        for (double s : {0.3, 0.5, 0.7}) {
            StripPoint p{s, t};
            ResidualReport r = sums::check_SR_SM_relation(p);
            std::ostringstream ps;
            ps << "sigma=" << s << " t=" << t;
            push("square_relation", ps.str(), r.rel_err);
            for (double d : {0.4, 0.5}) {
                sums::IndexSetSpec sq{sums::IndexKind::full_square, t, 0, d, d};
                sums::IndexSetSpec mid{sums::IndexKind::mid_band, t, 0, d, d};
                sums::IndexSetSpec hib{sums::IndexKind::high_band, t, 0, d, d};
                sums::IndexSetSpec lob{sums::IndexKind::low_band, t, 0, d, d};
                cx full = sums::sum_over(sq, sums::Weight::sm, p).value;
                cx parts = sums::sum_over(mid, sums::Weight::sm, p).value +
                           sums::sum_over(hib, sums::Weight::sm, p).value +
                           sums::sum_over(lob, sums::Weight::sm, p).value;
                std::ostringstream ps2;
                ps2 << "sigma=" << s << " t=" << t << " d=" << d;
                push("band_partition", ps2.str(), make_residual(full, parts).rel_err);
            }
        }
        for (double d : {0.4, 0.5}) {
            sums::CoverReport cov = sums::check_index_cover(t, d, d);
            std::ostringstream ps;
            ps << "t=" << t << " d2=d3=" << d;
            push("index_cover", ps.str(), cov.ok ? 0.0 : 1.0);
        }
    }
    rep.summary["failures"] = failures;
    rep.exit_code = failures == 0 ? 0 : 2;
    return rep;
}

Report run_atkinson(const ExperimentConfig& cfg) {
    cfg.validate();
    set_thread_count(cfg.threads);
    Report rep;
    rep.command = "atkinson";
    rep.config = config_json(cfg);
    rep.columns = {"sigma", "T", "numeric", "main_term", "deviation", "bound", "status"};
    double bound = cfg.tol("deviation", 40.0);
    std::vector<double> Ts = grid_or(cfg, {1000.0});
    int failures = 0;
    for (double T : Ts) {
        double numeric = kernel::atkinson_moment(T);
        double main_term =
            T * std::log(T) + (2.0 * euler_gamma - 1.0 - std::log(2.0 * 3.14159265358979324)) * T;
        double dev = std::abs(numeric - main_term);
        json row;
        row["sigma"] = 0.5;
        row["T"] = T;
        row["numeric"] = numeric;
        row["main_term"] = main_term;
        row["deviation"] = dev;
        row["bound"] = bound;
        row["oracle"] = "closed_form_main_term";
        bool ok = dev <= bound;
        row["status"] = ok ? "pass" : "fail";
        failures += ok ? 0 : 1;
        rep.rows.push_back(row);
    }
    // off-critical slope diagnostic: second moment grows ~ T * zeta(2 sigma)
    {
        double s = 0.75;
        double m200 = kernel::second_moment(s, 200.0);
        double m400 = kernel::second_moment(s, 400.0);
        double slope = (m400 - m200) / 200.0;
        double z = sf::zeta(cx{2.0 * s, 0.0}).real();
        json row;
        row["sigma"] = s;
        row["T"] = 400.0;
        row["numeric"] = m400;
        row["main_term"] = z * 400.0;
        row["deviation"] = std::abs(slope / z - 1.0);
        row["bound"] = "diagnostic";
        row["oracle"] = "trend";
        row["status"] = "info";
        rep.rows.push_back(row);
        rep.summary["sigma075_slope_over_zeta"] = slope / z;
    }
    rep.summary["failures"] = failures;
    rep.exit_code = failures == 0 ? 0 : 2;
    return rep;
}

Report run_j3(const ExperimentConfig& cfg) {
    cfg.validate();
    set_thread_count(cfg.threads);
    Report rep;
    rep.command = "j3";
    rep.config = config_json(cfg);
    rep.columns = {"t",      "lambda",  "sigma",  "reduced_re", "reduced_im",
                   "asym_re", "asym_im", "rel_err", "status"};
    double lambda = 1.0;
    double d2 = cfg.deltas.d2, d3 = cfg.deltas.d3;
    double qtol = cfg.tol("quadrature", 1e-8);
    double slope_gate = -cfg.tol("slope", 0.4);
    std::vector<double> ts = grid_or(cfg, {1e3, 1e4, 1e5});

    std::vector<double> errs;
    for (double t : ts) {
        StripPoint p{cfg.sigma, t};
        QuadResult red = asym::J3_reduced(p, d2, d3, lambda, qtol);
        asym::StationaryTerm s = asym::J3_S(p, d2, d3, lambda);
        cx u = asym::J3_U(p, d3, lambda);
        cx asymv = (s.applicable ? s.value : cx{0.0, 0.0}) - u;
        double rel = std::abs(asymv - red.value) / std::abs(red.value);
        errs.push_back(rel);
        json row;
        row["t"] = t;
        row["lambda"] = lambda;
        row["sigma"] = cfg.sigma;
        row["reduced_re"] = red.value.real();
        row["reduced_im"] = red.value.imag();
        row["asym_re"] = asymv.real();
        row["asym_im"] = asymv.imag();
        row["rel_err"] = rel;
        row["oracle"] = "quadrature";
        row["status"] = "info";
        rep.rows.push_back(row);
    }
    double slope = slope_loglog(ts, errs);
    rep.summary["loglog_slope"] = slope;
    rep.summary["slope_gate"] = slope_gate;
    rep.exit_code = slope <= slope_gate ? 0 : 2;
    return rep;
}

Report run_j4(const ExperimentConfig& cfg) {
    cfg.validate();
    set_thread_count(cfg.threads);
    Report rep;
    rep.command = "j4";
    rep.config = config_json(cfg);
    rep.columns = {"m1", "m2", "quad_re", "quad_im", "model_re", "model_im", "rel_err",
                   "status"};
    double t = cfg.t_grid.empty() ? 1e4 : cfg.t_grid.front();
    double d = 0.25;
    double gate = cfg.tol("rel_err", 1e-2);
    double qtol = cfg.tol("quadrature", 1e-9);
    StripPoint p{cfg.sigma, t};
    // samples on both sides of the pole condition m1/m2 in (t^{1-d3}, t)
    const std::pair<std::int64_t, std::int64_t> pairs[] = {
        {50, 400}, {1, 1}, {300, 7}, {9000, 3}, {9999, 2}};
    int failures = 0;
    for (auto [m1, m2] : pairs) {
        double ratio = double(m1) / double(m2);
        QuadResult q = asym::J4_direct(p, d, d, ratio, qtol);
        cx e4 = asym::E4_numeric(t, d, ratio / t, qtol).value;
        cx model = -1.0 + e4;
        double rel = std::abs(model - q.value) / std::abs(q.value);
        json row;
        row["m1"] = m1;
        row["m2"] = m2;
        row["quad_re"] = q.value.real();
        row["quad_im"] = q.value.imag();
        row["model_re"] = model.real();
        row["model_im"] = model.imag();
        row["rel_err"] = rel;
        row["tol"] = gate;
        row["oracle"] = "quadrature";
        bool ok = rel <= gate;
        row["status"] = ok ? "pass" : "fail";
        failures += ok ? 0 : 1;
        rep.rows.push_back(row);
    }
    rep.summary["t"] = t;
    rep.summary["failures"] = failures;
    rep.exit_code = failures == 0 ? 0 : 2;
    return rep;
}

Report run_section7(const ExperimentConfig& cfg) {
    cfg.validate();
    set_thread_count(cfg.threads);
    Report rep;
    rep.command = "section7";
    rep.config = config_json(cfg);
    rep.columns = {"variant", "t", "d1", "d2", "sum_re", "sum_im", "abs", "shape_ratio",
                   "status"};
    double d1 = cfg.deltas.d1, d2 = cfg.deltas.d2;
    std::vector<double> ts = grid_or(cfg, {50.0, 100.0, 200.0});
    auto shape = [&](sums::Section7Variant v, double t) {
        switch (v) {
            case sums::Section7Variant::ratio_amp:
                return std::pow(t, d2 - 0.5 * d1) * std::log(t);
            case sums::Section7Variant::shifted_amp:
                return std::pow(t, d2 - 0.5) * std::log(t);
            default:
                return std::pow(t, d2 - 0.5 * d1) * std::log(t);
        }
    };
    const std::pair<sums::Section7Variant, const char*> variants[] = {
        {sums::Section7Variant::ratio_amp, "ratio_amp"},
        {sums::Section7Variant::shifted_amp, "shifted_amp"},
        {sums::Section7Variant::plain_amp, "plain_amp"}};
    for (auto [v, name] : variants) {
        for (double t : ts) {
            SumValue sv = sums::sum_section7(t, d1, d2, v);
            json row;
            row["variant"] = name;
            row["t"] = t;
            row["d1"] = d1;
            row["d2"] = d2;
            row["sum_re"] = sv.value.real();
            row["sum_im"] = sv.value.imag();
            row["abs"] = std::abs(sv.value);
            row["shape_ratio"] = std::abs(sv.value) / shape(v, t);
            row["oracle"] = "trend";
            row["status"] = "info"; // non-assertive diagnostics
            rep.rows.push_back(row);
        }
    }
    rep.exit_code = 0;
    return rep;
}

Report run_sums(const ExperimentConfig& cfg) {
    cfg.validate();
    set_thread_count(cfg.threads);
    Report rep;
    rep.command = "sums";
    rep.config = config_json(cfg);
    rep.columns = {"name", "t", "d2", "value_re", "value_im", "abs", "shape_ratio", "terms",
                   "status"};
    double d2 = cfg.deltas.d2;
    std::vector<double> ts = grid_or(cfg, {100.0, 200.0, 400.0, 800.0});
    for (double t : ts) {
        StripPoint p{cfg.sigma, t};
        {
            SumValue g = sums::sum_g(p);
            double shape = std::pow(t, 0.5 - 5.0 / 3.0 * cfg.sigma) * std::log(t);
            json row;
            row["name"] = "edge_strip_g";
            row["t"] = t;
            row["d2"] = 0.0;
            row["value_re"] = g.value.real();
            row["value_im"] = g.value.imag();
            row["abs"] = std::abs(g.value);
            row["shape_ratio"] = std::abs(g.value) / shape;
            row["terms"] = g.terms;
            row["oracle"] = "trend";
            row["status"] = "info"; // non-assertive: headline growth claims
            rep.rows.push_back(row);
        }
        {
            SumValue sv = sums::sum_eq130(t, d2);
            double shape = std::pow(t, -0.5 + d2) * std::log(t);
            json row;
            row["name"] = "narrow_strip";
            row["t"] = t;
            row["d2"] = d2;
            row["value_re"] = sv.value.real();
            row["value_im"] = sv.value.imag();
            row["abs"] = std::abs(sv.value);
            row["shape_ratio"] = std::abs(sv.value) / shape;
            row["terms"] = sv.terms;
            row["oracle"] = "trend";
            row["status"] = "info";
            rep.rows.push_back(row);
        }
    }
    rep.exit_code = 0;
    return rep;
}

} // namespace zetalab::cli

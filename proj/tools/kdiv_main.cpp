// kdiv: Koszul-complex division toolkit.
//
// Subcommands wrap the library pipelines: complex/cycle checking, pointwise
// exactness tables, division in three modes (least-norm L2, adjugate,
// pointwise lift), identity verification, and the trace-bound fuzzer.
// JSON in, JSON out; a human summary goes to stderr. Reports are
// deterministic for fixed inputs, seed, and resolution.

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>

#include "kdiv/problem_io.hpp"
#include "kdiv/trace.hpp"

namespace {

using kdiv::Json;

constexpr int kExitParse = 2;
constexpr int kExitCycle = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitDivergent = 5;
constexpr int kExitSingular = 6;
constexpr int kExitIdentity = 7;

struct Output {
    std::string json_out;

    void emit(const Json& report, const std::string& summary) const {
        std::string text = report.dump(2);
        if (json_out.empty()) {
            std::cout << text << "\n";
        } else {
            std::ofstream out(json_out, std::ios::binary);
            out << text << "\n";
        }
        std::cerr << summary << "\n";
    }
};

Json base_report(const std::string& command, const std::string& input_path) {
    Json r;
    r["command"] = command;
    r["input"] = input_path;
    r["input_digest"] = kdiv::file_digest(input_path);
    r["warnings"] = Json::array();
    return r;
}

std::vector<kdiv::CPoint> resolve_points(const kdiv::ProblemFile& pf,
                                         const std::string& points_file,
                                         const std::string& grid_spec) {
    if (!points_file.empty()) return kdiv::load_points_file(points_file, pf.n);
    int n_rad = 4, n_ang = 8;
    if (!grid_spec.empty()) {
        auto x = grid_spec.find('x');
        if (x == std::string::npos)
            throw std::invalid_argument("--grid expects RxA, e.g. 4x8");
        n_rad = std::stoi(grid_spec.substr(0, x));
        n_ang = std::stoi(grid_spec.substr(x + 1));
    }
    kdiv::QuadratureGrid grid = kdiv::polydisc_grid(pf.domain, n_rad, n_ang);
    std::vector<kdiv::CPoint> pts;
    pts.reserve(grid.size());
    kdiv::CPoint z;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.node_at(i, z);
        pts.push_back(z);
    }
    return pts;
}

Json point_to_json(const kdiv::CPoint& z) {
    Json out = Json::array();
    for (const auto& c : z) out.push_back(Json::array({c.real(), c.imag()}));
    return out;
}

int cmd_check_complex(const std::string& input, const Output& out) {
    kdiv::ProblemFile pf = kdiv::load_problem_file(input);
    Json report = base_report("check-complex", input);
    Json degrees = Json::array();
    for (int p = 2; p <= pf.r; ++p) {
        kdiv::PolyMatrix prod =
            kdiv::boundary_matrix(pf.sec, p - 1) * kdiv::boundary_matrix(pf.sec, p);
        if (!prod.is_zero()) {
            report["results"]["complex_property"] = "FAIL";
            out.emit(report, "check-complex: d(p-1) d(p) != 0 at p=" + std::to_string(p));
            return kExitIdentity;
        }
        degrees.push_back(p);
    }
    report["results"]["complex_property"] = "PASS";
    report["results"]["degrees_checked"] = degrees;
    bool cycle = kdiv::is_cycle(pf.sec, pf.p, pf.f);
    report["results"]["target_is_cycle"] = cycle;
    if (!cycle) {
        kdiv::PolyExt defect = kdiv::interior(pf.sec.g, pf.f);
        report["results"]["cycle_defect"] = kdiv::ext_to_json(defect);
        out.emit(report, "check-complex: target is NOT a cycle; defect printed");
        return kExitCycle;
    }
    out.emit(report, "check-complex: PASS (d o d = 0 for all degrees, target is a cycle)");
    return 0;
}

int cmd_exactness(const std::string& input, const std::string& points_file,
                  const std::string& grid_spec, const Output& out) {
    kdiv::ProblemFile pf = kdiv::load_problem_file(input);
    Json report = base_report("exactness", input);
    auto points = resolve_points(pf, points_file, grid_spec);
    Json table = Json::array();
    bool all_agree = true;
    if (pf.matrix) {
        for (const auto& z : points) {
            Eigen::MatrixXcd m = pf.matrix->eval(z);
            Json row;
            row["z"] = point_to_json(z);
            if (m.cwiseAbs().maxCoeff() == 0.0) {
                row["e1"] = nullptr;
                row["flag"] = "zero-matrix";
            } else {
                row["e1"] = kdiv::exactness_score_single(m);
            }
            table.push_back(row);
        }
        report["results"]["mode"] = "raw-matrix";
    } else {
        int spot = pf.p - 1;
        for (const auto& z : points) {
            kdiv::KoszulPair pair = kdiv::koszul_pair_at(pf.sec, spot, z);
            double e = kdiv::exactness_score(pair.phi, pair.psi);
            kdiv::PointFrame frame = kdiv::PointFrame::at(pf.sec, z);
            bool agree = std::abs(e - frame.s_norm2) <=
                         1e-9 * std::max(frame.s_norm2, 1.0);
            Json row;
            row["z"] = point_to_json(z);
            row["exactness"] = e;
            row["s_norm2"] = frame.s_norm2;
            row["agree"] = agree;
            if (frame.s_norm2 == 0.0) row["flag"] = "zero-locus";
            table.push_back(row);
            all_agree = all_agree && agree;
        }
        report["results"]["mode"] = "koszul";
        report["results"]["spot_degree"] = spot;
        report["results"]["all_agree"] = all_agree;
    }
    report["results"]["points"] = table;
    out.emit(report, "exactness: " + std::to_string(points.size()) + " points evaluated");
    return 0;
}

int cmd_divide(const std::string& input, const std::string& mode, int degree_override,
               const std::string& resolution, const std::string& points_file,
               const std::string& grid_spec, const Output& out) {
    kdiv::ProblemFile pf = kdiv::load_problem_file(input);
    if (degree_override >= 0) pf.degree = degree_override;
    if (!resolution.empty()) {
        auto comma = resolution.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("--resolution expects R,A");
        pf.n_rad = std::stoi(resolution.substr(0, comma));
        pf.n_ang = std::stoi(resolution.substr(comma + 1));
    }
    Json report = base_report("divide", input);
    report["mode"] = mode;

    if (mode == "l2") {
        kdiv::DivisionProblem prob = pf.to_division_problem();
        try {
            kdiv::DivisionCertificate cert = kdiv::skoda_report(prob, pf.n_rad, pf.n_ang);
            report["results"]["certificate"] = kdiv::certificate_to_json(cert);
            report["results"]["degree"] = prob.degree;
            out.emit(report,
                     "divide(l2): ratio " + std::to_string(cert.ratio) + " vs bound " +
                         std::to_string(cert.bound) +
                         (cert.satisfied ? " [satisfied]" : " [NOT satisfied]"));
            return 0;
        } catch (const kdiv::DivergentNormError& e) {
            report["results"]["error"] = e.what();
            out.emit(report, std::string("divide(l2): ") + e.what());
            return kExitDivergent;
        } catch (const kdiv::InfeasibleError& e) {
            report["results"]["error"] = e.what();
            report["results"]["rank_defect"] = e.rank_defect;
            out.emit(report, std::string("divide(l2): ") + e.what() +
                                 " (try raising --degree)");
            return kExitInfeasible;
        }
    }

    if (mode == "adjugate") {
        kdiv::PolyMatrix phi = pf.matrix ? *pf.matrix : [&] {
            kdiv::PolyMatrix row(1, pf.r, pf.n);
            for (int i = 0; i < pf.r; ++i) row.at(0, i) = pf.sec.g[i];
            return row;
        }();
        std::vector<kdiv::Poly> f;
        if (pf.rhs) {
            f = *pf.rhs;
        } else {
            kdiv::Poly f0(pf.n);
            auto it = pf.f.coeffs().find(kdiv::MultiIndex({}, pf.r));
            if (it != pf.f.coeffs().end()) f0 = it->second;
            f.push_back(f0);
        }
        if (static_cast<int>(f.size()) != phi.rows())
            throw std::invalid_argument("adjugate mode: rhs length != matrix rows");
        auto delta = kdiv::minors(phi);
        kdiv::ScalarDivisionData data;
        try {
            data = pf.scalar_data ? *pf.scalar_data
                                  : kdiv::scalar_backend_single(delta, f);
            std::vector<kdiv::Poly> h = kdiv::assemble_solution(phi, data, f);
            Json hj = Json::array();
            for (const auto& hi : h) hj.push_back(hi.to_string());
            report["results"]["h"] = hj;
            report["results"]["residual"] = "0";
            // integrability of the scalar hypothesis, reported separately
            double alpha = 1.0 + pf.weight.epsilon;
            int q = phi.rows(), pcols = phi.cols();
            double beta =
                std::min<double>(pf.n, static_cast<double>(kdiv::binom(pcols, q)) - 1.0) *
                    alpha + 1.0;
            std::vector<kdiv::NumPoly> dnum;
            for (const auto& [I, d] : delta) dnum.push_back(kdiv::NumPoly::from(d));
            std::vector<kdiv::NumPoly> fnum;
            for (const auto& fi : f) fnum.push_back(kdiv::NumPoly::from(fi));
            kdiv::RefineResult rr = kdiv::refine_and_estimate(
                fnum, kdiv::power_weight(dnum, beta, pf.weight.psi), pf.domain,
                pf.n_rad, pf.n_ang);
            report["results"]["integrability"] = {
                {"alpha", alpha},
                {"beta", beta},
                {"value", rr.value},
                {"rel_change", rr.rel_change},
                {"diverging", rr.diverging}};
            out.emit(report, "divide(adjugate): exact solution found, residual 0");
            return 0;
        } catch (const std::invalid_argument& e) {
            report["results"]["error"] = e.what();
            out.emit(report, std::string("divide(adjugate): ") + e.what());
            return kExitInfeasible;
        }
    }

    if (mode == "pointwise") {
        auto points = resolve_points(pf, points_file, grid_spec);
        Json rows = Json::array();
        for (const auto& z : points) {
            kdiv::PointFrame frame = kdiv::PointFrame::at(pf.sec, z);
            kdiv::NumExt fz = kdiv::eval_ext(pf.f, z);
            Json row;
            row["z"] = point_to_json(z);
            if (frame.s_norm2 <= 0.0) {
                report["results"]["error"] = "singular point: s vanishes";
                report["results"]["points"] = rows;
                out.emit(report, "divide(pointwise): singular point encountered");
                return kExitSingular;
            }
            kdiv::NumExt h = kdiv::pointwise_lift(frame, pf.p, fz);
            Json hj = Json::object();
            for (const auto& [I, c] : h.coeffs())
                hj[kdiv::multi_index_key(I)] = Json::array({c.real(), c.imag()});
            row["h"] = hj;
            row["h_norm2"] = kdiv::ext_norm2(h);
            rows.push_back(row);
        }
        report["results"]["points"] = rows;
        out.emit(report, "divide(pointwise): " + std::to_string(points.size()) +
                             " lifts computed");
        return 0;
    }

    throw std::invalid_argument("unknown --mode: " + mode);
}

int cmd_verify_identities(const std::string& input, std::uint64_t seed, int npoints,
                          const Output& out) {
    kdiv::ProblemFile pf = kdiv::load_problem_file(input);
    Json report = base_report("verify-identities", input);
    report["seed"] = seed;
    report["npoints"] = npoints;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto random_point = [&]() {
        kdiv::CPoint z(pf.n);
        for (int j = 0; j < pf.n; ++j) {
            double re = unit(rng) * pf.domain.radii[j] * 0.9;
            double im = unit(rng) * pf.domain.radii[j] * 0.9;
            z[j] = pf.domain.center[j] + std::complex<double>(re, im) / std::sqrt(2.0);
        }
        return z;
    };

    // sample points, discarding those too close to the zero locus
    std::vector<kdiv::CPoint> pts;
    double sup_g = 0.0;
    std::vector<kdiv::CPoint> raw;
    for (int t = 0; t < npoints * 4 && static_cast<int>(pts.size()) < npoints; ++t) {
        kdiv::CPoint z = random_point();
        double s2 = 0.0;
        for (const auto& gi : pf.sec.g) s2 += std::norm(gi.eval(z));
        sup_g = std::max(sup_g, std::sqrt(s2));
        raw.push_back(z);
        if (std::sqrt(s2) >= 1e-4 * std::max(sup_g, 1e-12)) pts.push_back(z);
    }

    kdiv::HoloFamily fam = kdiv::HoloFamily::from_section(pf.sec);
    double worst_grad = 0.0, worst_hess = 0.0, worst_grad_half = 0.0, worst_hess_half = 0.0;
    double worst_sff_il = 0.0, worst_sff_norm = 0.0, worst_eq45 = 0.0, worst_contr = 0.0;
    const double step = 1e-3;
    for (const auto& z : pts) {
        worst_grad = std::max(worst_grad, kdiv::grad_phi_check(fam, z, step));
        worst_hess = std::max(worst_hess, kdiv::hessian_phi_check(fam, z, step));
        worst_grad_half = std::max(worst_grad_half, kdiv::grad_phi_check(fam, z, step / 2));
        worst_hess_half = std::max(worst_hess_half, kdiv::hessian_phi_check(fam, z, step / 2));
        kdiv::PointFrame frame = kdiv::PointFrame::at(pf.sec, z);
        for (int p = 1; p <= pf.r; ++p) {
            kdiv::SffErrors se = kdiv::koszul_sff_check(pf.sec, p, z, seed);
            worst_sff_il = std::max(worst_sff_il, se.interleave);
            worst_sff_norm = std::max(worst_sff_norm, se.norm);
            kdiv::HomNorm2 hn = kdiv::hom_norm2_check(frame, p);
            worst_eq45 = std::max(worst_eq45, std::abs(hn.norm2 - hn.expected) /
                                                  std::max(hn.expected, 1e-12));
        }
        worst_contr =
            std::max(worst_contr, kdiv::hessian_contraction_check(pf.sec, z, 4, seed));
    }
    kdiv::RankBoundResult rb = kdiv::rank_bound_check(pf.sec, raw);

    // trace-bound fuzz rides along: both built-in pairings, seeded dims
    int trace_violations = 0;
    for (int t = 0; t < 1000; ++t) {
        int dw = 1 + static_cast<int>(rng() % 3);
        int du = 1 + static_cast<int>(rng() % 4);
        Eigen::MatrixXcd d(dw * du, du);
        for (int i = 0; i < d.rows(); ++i)
            for (int j = 0; j < d.cols(); ++j) d(i, j) = {unit(rng), unit(rng)};
        try {
            kdiv::trace_bound_check(kdiv::LinearMap::make(d),
                                    kdiv::BilinearMap::contraction(dw, du));
        } catch (const std::runtime_error&) {
            ++trace_violations;
        }
    }

    Json res;
    res["max_grad_fd_error"] = worst_grad;
    res["max_hessian_fd_error"] = worst_hess;
    res["max_sff_interleave_error"] = worst_sff_il;
    res["max_sff_norm_error"] = worst_sff_norm;
    res["max_hom_norm_rel_error"] = worst_eq45;
    res["max_hessian_contraction_error"] = worst_contr;
    res["rank_bound_worst_excess"] = rb.worst_excess;
    res["rank_bound_points_skipped"] = rb.skipped;
    res["trace_bound_violations"] = trace_violations;

    bool fd_ratio_ok = true;
    if (worst_grad > 1e-12) {
        double ratio = worst_grad / std::max(worst_grad_half, 1e-300);
        res["grad_fd_halving_ratio"] = ratio;
        fd_ratio_ok = fd_ratio_ok && ratio >= 3.5 && ratio <= 4.5;
    }
    if (worst_hess > 1e-12) {
        double ratio = worst_hess / std::max(worst_hess_half, 1e-300);
        res["hessian_fd_halving_ratio"] = ratio;
        fd_ratio_ok = fd_ratio_ok && ratio >= 3.5 && ratio <= 4.5;
    }

    bool pass = worst_grad <= 1e-5 && worst_hess <= 1e-5 && worst_sff_il <= 1e-8 &&
                worst_sff_norm <= 1e-8 && worst_eq45 <= 1e-10 && worst_contr <= 1e-8 &&
                rb.worst_excess <= 0 && trace_violations == 0 && fd_ratio_ok;
    res["verdict"] = pass ? "PASS" : "FAIL";
    report["results"] = res;
    out.emit(report, std::string("verify-identities: ") + (pass ? "PASS" : "FAIL"));
    return pass ? 0 : kExitIdentity;
}

int cmd_trace_bound(std::uint64_t seed, int trials, const Output& out) {
    Json report;
    report["command"] = "trace-bound";
    report["seed"] = seed;
    report["trials"] = trials;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    int violations = 0;
    double max_tightness = 0.0;
    for (int t = 0; t < trials; ++t) {
        bool use_interior = (t % 2 == 1);
        try {
            if (use_interior) {
                int m = 2 + static_cast<int>(rng() % 4);  // 2..5
                int p = 1 + static_cast<int>(rng() % m);
                kdiv::BilinearMap rho = kdiv::BilinearMap::interior(m, p);
                Eigen::MatrixXcd d(rho.dim_v(), rho.dim_u());
                for (int i = 0; i < d.rows(); ++i)
                    for (int j = 0; j < d.cols(); ++j) d(i, j) = {unit(rng), unit(rng)};
                kdiv::TraceBound tb =
                    kdiv::trace_bound_check(kdiv::LinearMap::make(d), rho);
                if (tb.rhs > 0) max_tightness = std::max(max_tightness, tb.lhs / tb.rhs);
            } else {
                int dw = 1 + static_cast<int>(rng() % 3);
                int du = 1 + static_cast<int>(rng() % 5);
                kdiv::BilinearMap rho = kdiv::BilinearMap::contraction(dw, du);
                // rank-limited maps exercise the sqrt(rank) factor
                int rk = 1 + static_cast<int>(rng() % 3);
                Eigen::MatrixXcd a(dw * du, rk), b(rk, du);
                for (int i = 0; i < a.rows(); ++i)
                    for (int j = 0; j < a.cols(); ++j) a(i, j) = {unit(rng), unit(rng)};
                for (int i = 0; i < b.rows(); ++i)
                    for (int j = 0; j < b.cols(); ++j) b(i, j) = {unit(rng), unit(rng)};
                kdiv::TraceBound tb =
                    kdiv::trace_bound_check(kdiv::LinearMap::make(a * b), rho);
                if (tb.rhs > 0) max_tightness = std::max(max_tightness, tb.lhs / tb.rhs);
            }
        } catch (const std::runtime_error&) {
            ++violations;
        }
    }
    report["results"]["violations"] = violations;
    report["results"]["max_lhs_over_rhs"] = max_tightness;
    report["results"]["verdict"] = violations == 0 ? "PASS" : "FAIL";
    out.emit(report, "trace-bound: " + std::to_string(violations) + " violations in " +
                         std::to_string(trials) + " trials");
    return violations == 0 ? 0 : kExitIdentity;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Koszul-complex division toolkit"};
    app.require_subcommand(1);

    std::string input, json_out, mode = "l2", points_file, grid_spec, resolution;
    std::uint64_t seed = 0;
    int npoints = 20, degree = -1, trials = 1000;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input)
            cmd->add_option("--input", input, "problem file (JSON)")->required();
        cmd->add_option("--json-out", json_out, "write the JSON report to a file");
    };

    CLI::App* check = app.add_subcommand("check-complex", "verify d o d = 0 and the cycle condition");
    add_common(check, true);

    CLI::App* exact = app.add_subcommand("exactness", "tabulate the exactness function against |s|^2");
    add_common(exact, true);
    exact->add_option("--points", points_file, "points file (JSON)");
    exact->add_option("--grid", grid_spec, "sample grid RxA");

    CLI::App* divide = app.add_subcommand("divide", "solve g . h = f");
    add_common(divide, true);
    divide->add_option("--mode", mode, "l2 | adjugate | pointwise");
    divide->add_option("--degree", degree, "polynomial basis degree bound");
    divide->add_option("--resolution", resolution, "quadrature resolution R,A");
    divide->add_option("--points", points_file, "points file (pointwise mode)");
    divide->add_option("--grid", grid_spec, "sample grid RxA (pointwise mode)");

    CLI::App* verify = app.add_subcommand("verify-identities", "run the identity suites at random points");
    add_common(verify, true);
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--npoints", npoints, "number of sample points");

    CLI::App* trace = app.add_subcommand("trace-bound", "fuzz the generalized trace bound");
    add_common(trace, false);
    trace->add_option("--seed", seed, "RNG seed");
    trace->add_option("--trials", trials, "number of random maps");

    CLI11_PARSE(app, argc, argv);

    Output out{json_out};
    auto t0 = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (check->parsed()) rc = cmd_check_complex(input, out);
        else if (exact->parsed()) rc = cmd_exactness(input, points_file, grid_spec, out);
        else if (divide->parsed())
            rc = cmd_divide(input, mode, degree, resolution, points_file, grid_spec, out);
        else if (verify->parsed()) rc = cmd_verify_identities(input, seed, npoints, out);
        else if (trace->parsed()) rc = cmd_trace_bound(seed, trials, out);
    } catch (const kdiv::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    auto t1 = std::chrono::steady_clock::now();
    std::cerr << "wall time: "
              << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
              << " ms\n";
    return rc;
}

#include "kdiv/problem_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace kdiv {

MultiIndex parse_multi_index(const std::string& key, int ambient) {
    std::vector<int> idx;
    if (!key.empty()) {
        std::istringstream is(key);
        std::string tok;
        while (std::getline(is, tok, ',')) idx.push_back(std::stoi(tok));
    }
    return MultiIndex(std::move(idx), ambient);
}

std::string multi_index_key(const MultiIndex& I) {
    std::ostringstream os;
    for (int a = 0; a < I.size(); ++a) {
        if (a) os << ",";
        os << I[a];
    }
    return os.str();
}

namespace {

std::complex<double> parse_complex_pair(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("expected [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ProblemFile parse_problem_json(const Json& j, const std::string& origin) {
    ProblemFile pf;
    pf.version = j.value("version", "1");
    pf.n = j.at("n").get<int>();
    pf.r = j.at("r").get<int>();
    pf.p = j.value("p", 1);
    if (pf.n < 1 || pf.r < 1)
        throw std::invalid_argument(origin + ": n and r must be positive");

    std::vector<Poly> gens;
    for (const auto& gtxt : j.at("generators")) {
        pf.generator_text.push_back(gtxt.get<std::string>());
        gens.push_back(parse_poly(gtxt.get<std::string>(), pf.n));
    }
    if (static_cast<int>(gens.size()) != pf.r)
        throw std::invalid_argument(origin + ": generators length != r");
    pf.sec = KoszulSection::make(pf.n, std::move(gens));

    pf.f = PolyExt(pf.r, pf.p - 1);
    if (j.contains("target")) {
        for (const auto& [key, val] : j.at("target").items()) {
            MultiIndex I = parse_multi_index(key, pf.r);
            if (I.size() != pf.p - 1)
                throw std::invalid_argument(origin + ": target key '" + key +
                                            "' has wrong degree");
            pf.f.add(I, parse_poly(val.get<std::string>(), pf.n));
        }
    }

    pf.weight.q = WeightSpec::default_q(pf.n, pf.r);
    if (j.contains("weight")) {
        const Json& w = j.at("weight");
        pf.weight.psi = PsiSpec::parse(w.value("psi", "0"), pf.n);
        pf.weight.epsilon = w.value("epsilon", 1.0);
        if (w.contains("q")) pf.weight.q = w.at("q").get<int>();
        if (pf.weight.epsilon <= 0.0)
            throw std::invalid_argument(origin + ": epsilon must be positive");
        if (pf.weight.q < 0)
            throw std::invalid_argument(origin + ": q must be >= 0");
    }

    if (j.contains("domain")) {
        const Json& d = j.at("domain");
        if (d.value("kind", "polydisc") != "polydisc")
            throw std::invalid_argument(origin + ": only polydisc domains are supported");
        for (const auto& c : d.at("center")) pf.domain.center.push_back(parse_complex_pair(c));
        for (const auto& rr : d.at("radii")) pf.domain.radii.push_back(rr.get<double>());
        pf.domain.validate();
        if (pf.domain.dim() != pf.n)
            throw std::invalid_argument(origin + ": domain dimension != n");
    } else {
        pf.domain = DomainSpec::unit_polydisc(pf.n);
    }

    if (j.contains("solver")) {
        const Json& s = j.at("solver");
        pf.degree = s.value("degree", -1);
        pf.n_rad = s.value("n_rad", 32);
        pf.n_ang = s.value("n_ang", 32);
    }

    if (j.contains("matrix")) {
        const Json& m = j.at("matrix");
        int rows = static_cast<int>(m.size());
        int cols = rows ? static_cast<int>(m[0].size()) : 0;
        PolyMatrix pm(rows, cols, pf.n);
        for (int i = 0; i < rows; ++i) {
            if (static_cast<int>(m[i].size()) != cols)
                throw std::invalid_argument(origin + ": ragged matrix rows");
            for (int c = 0; c < cols; ++c)
                pm.at(i, c) = parse_poly(m[i][c].get<std::string>(), pf.n);
        }
        pf.matrix = std::move(pm);
    }
    if (j.contains("rhs")) {
        std::vector<Poly> rhs;
        for (const auto& t : j.at("rhs")) rhs.push_back(parse_poly(t.get<std::string>(), pf.n));
        pf.rhs = std::move(rhs);
    }
    if (j.contains("u") || j.contains("v")) {
        ScalarDivisionData data;
        int p_cols = pf.matrix ? pf.matrix->cols() : pf.r;
        auto read_map = [&](const char* field,
                            std::map<MultiIndex, std::vector<Poly>>& into) {
            if (!j.contains(field)) return;
            for (const auto& [key, arr] : j.at(field).items()) {
                MultiIndex I = parse_multi_index(key, p_cols);
                std::vector<Poly> vec;
                for (const auto& t : arr) vec.push_back(parse_poly(t.get<std::string>(), pf.n));
                into.emplace(std::move(I), std::move(vec));
            }
        };
        read_map("u", data.u);
        read_map("v", data.v);
        pf.scalar_data = std::move(data);
    }
    return pf;
}

ProblemFile load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open problem file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("JSON parse error in " + path + ": " + e.what());
    }
    return parse_problem_json(j, path);
}

int ProblemFile::resolved_degree() const {
    if (degree >= 0) return degree;
    return DivisionProblem::default_degree(sec, f);
}

DivisionProblem ProblemFile::to_division_problem() const {
    return DivisionProblem::make(sec, p, f, weight, domain, resolved_degree());
}

std::vector<CPoint> load_points_file(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open points file: " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("JSON parse error in " + path + ": " + e.what());
    }
    std::vector<CPoint> out;
    for (const auto& pj : j) {
        CPoint z;
        for (const auto& c : pj) z.push_back(parse_complex_pair(c));
        if (static_cast<int>(z.size()) != n)
            throw std::invalid_argument("points file: point dimension != n");
        out.push_back(std::move(z));
    }
    return out;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file for digest: " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

Json ext_to_json(const PolyExt& e) {
    Json out = Json::object();
    for (const auto& [I, c] : e.coeffs()) out[multi_index_key(I)] = c.to_string();
    return out;
}

Json certificate_to_json(const DivisionCertificate& cert) {
    Json out;
    out["h"] = ext_to_json(cert.h);
    out["residual"] = cert.residual.is_zero() ? "0" : "nonzero";
    out["norm_h"] = cert.norm_h;
    out["norm_f"] = cert.norm_f;
    out["ratio"] = cert.ratio;
    out["bound"] = cert.bound;
    out["satisfied"] = cert.satisfied;
    out["quadrature_rel_change"] = cert.quadrature_rel_change;
    out["rel_change_h"] = cert.rel_change_h;
    out["rel_change_f"] = cert.rel_change_f;
    if (!cert.note.empty()) out["note"] = cert.note;
    return out;
}

}  // namespace kdiv

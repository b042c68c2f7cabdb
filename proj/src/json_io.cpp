#include "brpic/json_io.hpp"

#include <array>

namespace brpic::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& field(const json& j, const std::string& path, const std::string& key) {
    if (!j.is_object()) throw FieldError(path.empty() ? "<root>" : path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw FieldError(at(path, key), "missing field");
    return *it;
}

const json& array(const json& j, const std::string& path) {
    if (!j.is_array()) throw FieldError(path, "expected an array");
    return j;
}

long integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw FieldError(path, "expected an integer");
    return j.get<long>();
}

std::vector<int> int_list(const json& j, const std::string& path) {
    std::vector<int> out;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) out.push_back(static_cast<int>(integer(j[i], at(path, i))));
    return out;
}

std::vector<int> group_coords(const json& j, const FinAbGroup& G, const std::string& path, const char* key) {
    const json& arr = j.is_object() ? field(j, path, key) : j;
    std::string p = j.is_object() ? at(path, key) : path;
    std::vector<int> c = int_list(arr, p);
    if (c.size() != static_cast<std::size_t>(G.rank()))
        throw FieldError(p, "expected " + std::to_string(G.rank()) + " entries, got " + std::to_string(c.size()));
    return G.reduce(c);
}

std::vector<Vec> rows_from_json(const json& j, const std::string& path) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < array(j, path).size(); ++i) {
        Vec r;
        for (std::size_t k = 0; k < array(j[i], at(path, i)).size(); ++k) r.push_back(scalar_from_json(j[i][k], at(at(path, i), k)));
        rows.push_back(std::move(r));
    }
    return rows;
}

Matrix from_rows_checked(const std::vector<Vec>& rows, std::size_t cols, const std::string& path) {
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != cols)
            throw FieldError(at(path, i), "expected " + std::to_string(cols) + " entries, got " + std::to_string(rows[i].size()));
    return Matrix::from_rows(rows, cols);
}

json sparse_triples(const std::vector<Sparse>& v, std::size_t mod) {
    json out = json::array();
    for (std::size_t a = 0; a < v.size(); ++a)
        for (const auto& [k, c] : v[a]) out.push_back({a, k / mod, k % mod, c.to_string()});
    return out;
}

}  // namespace

json to_json(const Scalar& s) { return s.to_string(); }

json cyclo_object(const Scalar& s) {
    json c = json::array();
    for (const auto& q : s.coeffs()) c.push_back(q.get_str());
    return {{"N", s.conductor()}, {"coeffs", c}};
}

Scalar scalar_from_json(const json& j, const std::string& path) {
    try {
        if (j.is_string()) return Cyclo::parse(j.get<std::string>());
        if (j.is_number_integer()) return Cyclo(j.get<long>());
        if (j.is_object()) {
            int N = static_cast<int>(integer(field(j, path, "N"), at(path, "N")));
            if (N < 1) throw FieldError(at(path, "N"), "conductor must be positive");
            std::vector<Rational> c;
            const json& cs = array(field(j, path, "coeffs"), at(path, "coeffs"));
            for (std::size_t i = 0; i < cs.size(); ++i) {
                if (!cs[i].is_string()) throw FieldError(at(at(path, "coeffs"), i), "expected a rational string");
                Rational q;
                if (q.set_str(cs[i].get<std::string>(), 10) != 0 || q.get_den() == 0)
                    throw FieldError(at(at(path, "coeffs"), i), "bad rational");
                q.canonicalize();
                c.push_back(q);
            }
            return Cyclo(N, std::move(c));
        }
    } catch (const FieldError&) {
        throw;
    } catch (const std::exception& e) {
        throw FieldError(path, e.what());
    }
    throw FieldError(path, "expected a scalar");
}

json to_json(const FinAbGroup& G) { return {{"factors", G.factors()}}; }

FinAbGroup group_from_json(const json& j, const std::string& path) {
    std::vector<int> f = int_list(field(j, path, "factors"), at(path, "factors"));
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] < 1) throw FieldError(at(at(path, "factors"), i), "factor must be >= 1");
    return FinAbGroup(f);
}

json element_to_json(const Coords& g) { return {{"coords", g}}; }
json character_to_json(const Coords& chi) { return {{"exps", chi}}; }

Coords element_from_json(const json& j, const FinAbGroup& G, const std::string& path) {
    return group_coords(j, G, path, "coords");
}

Coords character_from_json(const json& j, const FinAbGroup& G, const std::string& path) {
    return group_coords(j, G, path, "exps");
}

json to_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) r.push_back(to_json(m(i, k)));
        out.push_back(r);
    }
    return out;
}

Matrix matrix_from_json(const json& j, const std::string& path) {
    std::vector<Vec> rows = rows_from_json(j, path);
    return from_rows_checked(rows, rows.empty() ? 0 : rows[0].size(), path);
}

json to_json(const Subspace& W) { return {{"ambient", W.ambient()}, {"basis", to_json(W.basis())}}; }

Subspace subspace_from_json(const json& j, const std::string& path) {
    long n = integer(field(j, path, "ambient"), at(path, "ambient"));
    if (n < 0) throw FieldError(at(path, "ambient"), "must be >= 0");
    std::string bp = at(path, "basis");
    Matrix b = from_rows_checked(rows_from_json(field(j, path, "basis"), bp), static_cast<std::size_t>(n), bp);
    if (b.rows() == 0) return Subspace(static_cast<std::size_t>(n));
    return Subspace::span(b);
}

json to_json(const BilinearForm& b) { return {{"gram", to_json(b.gram)}}; }

BilinearForm form_from_json(const json& j, const std::string& path) {
    std::string gp = at(path, "gram");
    Matrix g = matrix_from_json(field(j, path, "gram"), gp);
    if (g.rows() != g.cols()) throw FieldError(gp, "gram matrix must be square");
    return BilinearForm{g};
}

json to_json(const OrthAut& a) { return {{"matrix", a.matrix()}}; }

OrthAut orth_from_json(const json& j, const FinAbGroup& G, const std::string& path) {
    std::string mp = at(path, "matrix");
    const json& m = array(field(j, path, "matrix"), mp);
    std::size_t n = 2 * static_cast<std::size_t>(G.rank());
    if (m.size() != n) throw FieldError(mp, "expected " + std::to_string(n) + " rows");
    std::vector<std::vector<int>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        rows.push_back(int_list(m[i], at(mp, i)));
        if (rows.back().size() != n) throw FieldError(at(mp, i), "expected " + std::to_string(n) + " entries");
    }
    try {
        return OrthAut(G, rows);
    } catch (const StructuralError& e) {
        throw FieldError(mp, e.what());
    }
}

json to_json(const GModule& V) {
    json chis = json::array();
    for (const auto& c : V.chis) chis.push_back(character_to_json(c));
    return {{"group", to_json(V.G)}, {"u", element_to_json(V.u)}, {"V", chis}};
}

GModule module_from_json(const json& j, const std::string& path) {
    GModule V;
    V.G = group_from_json(field(j, path, "group"), at(path, "group"));
    V.u = element_from_json(field(j, path, "u"), V.G, at(path, "u"));
    std::string vp = at(path, "V");
    const json& vs = array(field(j, path, "V"), vp);
    for (std::size_t i = 0; i < vs.size(); ++i) V.chis.push_back(character_from_json(vs[i], V.G, at(vp, i)));
    try {
        V.validate();
    } catch (const StructuralError& e) {
        std::string msg = e.what();
        throw FieldError(msg.rfind("character", 0) == 0 || msg.find("on V") != std::string::npos ? vp : at(path, "u"), msg);
    }
    return V;
}

json to_json(const RDatum& r) {
    return {{"kind", "R"}, {"W", to_json(r.W)}, {"beta", to_json(r.beta)}, {"alpha", to_json(r.alpha)}};
}

json to_json(const ODatum& o) { return {{"kind", "O"}, {"T", to_json(o.T)}, {"alpha", to_json(o.alpha)}}; }

Datum datum_from_json(const json& j, const GModule& V, const std::string& path) {
    if (!j.is_object()) throw FieldError(path, "expected an object");
    std::string kind;
    if (j.contains("kind")) {
        if (!j["kind"].is_string()) throw FieldError(at(path, "kind"), "expected \"R\" or \"O\"");
        kind = j["kind"].get<std::string>();
        if (kind != "R" && kind != "O") throw FieldError(at(path, "kind"), "expected \"R\" or \"O\"");
    } else {
        kind = j.contains("T") ? "O" : "R";
    }
    OrthAut alpha = j.contains("alpha") ? orth_from_json(j["alpha"], V.G, at(path, "alpha")) : OrthAut::identity(V.G);
    const std::size_t d = V.dim();
    if (kind == "O") {
        Matrix T = matrix_from_json(field(j, path, "T"), at(path, "T"));
        if (T.rows() != 2 * d || (d > 0 && T.cols() != 2 * d))
            throw FieldError(at(path, "T"), "expected a " + std::to_string(2 * d) + " x " + std::to_string(2 * d) + " matrix");
        return ODatum{T, alpha};
    }
    // beta is read against the basis as given and rewritten for the RREF basis.
    const json& wj = field(j, path, "W");
    std::string wp = at(path, "W"), bp = at(path, "beta");
    long n = integer(field(wj, wp, "ambient"), at(wp, "ambient"));
    if (n != static_cast<long>(2 * d)) throw FieldError(at(wp, "ambient"), "expected " + std::to_string(2 * d));
    std::vector<Vec> given = rows_from_json(field(wj, wp, "basis"), at(wp, "basis"));
    Matrix B = from_rows_checked(given, 2 * d, at(wp, "basis"));
    Subspace W = given.empty() ? Subspace(2 * d) : Subspace::span(B);
    if (W.dim() != given.size()) throw FieldError(at(wp, "basis"), "basis vectors are linearly dependent");
    BilinearForm beta = j.contains("beta") ? form_from_json(j["beta"], bp) : zero_form(W.dim());
    if (beta.gram.rows() != W.dim()) throw FieldError(at(bp, "gram"), "expected a " + std::to_string(W.dim()) + " x " + std::to_string(W.dim()) + " matrix");
    if (W.dim() > 0) {
        Matrix P(W.dim(), W.dim());
        for (std::size_t i = 0; i < given.size(); ++i) P.set_row(i, W.coords(given[i]));
        Matrix Pi = inverse(P);
        beta.gram = Pi * beta.gram * Pi.transpose();
    }
    return RDatum{W, beta, alpha};
}

json to_json(const TwoCocycle& psi) {
    json dom = json::array();
    for (const auto& f : psi.domain().elements()) dom.push_back(element_to_json(f));
    return {{"domain", dom}, {"N", psi.conductor()}, {"exps", psi.table()}};
}

json to_json(const AlphaComponent& c) {
    json out{{"alpha", to_json(c.alpha)},
             {"a_dim", c.a_dim},
             {"c_dim", c.c_dim},
             {"has_invertible_a", c.has_invertible_a},
             {"d_forced_equivariant", c.d_forced_equivariant}};
    out["a_rep"] = c.a_rep ? to_json(*c.a_rep) : json(nullptr);
    return out;
}

json to_json(const BrpicDescription& d) {
    json comps = json::array();
    for (const auto& c : d.components) comps.push_back(to_json(c));
    return {{"orth_order", d.orth_order},
            {"component_count", d.component_count()},
            {"nonempty_components", d.nonempty_components()},
            {"components", comps}};
}

json to_json(const AlgebraDump& d) {
    json mult = json::array();
    for (std::size_t i = 0; i < d.alg.dim; ++i)
        for (std::size_t j = 0; j < d.alg.dim; ++j)
            for (const auto& [k, c] : d.alg.mul_basis(i, j)) mult.push_back({i, j, k, c.to_string()});
    return {{"dim", d.alg.dim},
            {"unit", d.alg.unit},
            {"basis", d.alg.labels},
            {"mult", mult},
            {"host_dim", d.host_dim},
            {"coaction", sparse_triples(d.coaction, d.alg.dim)}};
}

AlgebraDump algebra_from_json(const json& j, const std::string& path) {
    AlgebraDump d;
    long n = integer(field(j, path, "dim"), at(path, "dim"));
    if (n < 0) throw FieldError(at(path, "dim"), "must be >= 0");
    std::size_t dim = static_cast<std::size_t>(n);
    d.alg.dim = dim;
    d.alg.unit = j.contains("unit") ? static_cast<std::size_t>(integer(j["unit"], at(path, "unit"))) : 0;
    std::string lp = at(path, "basis");
    const json& labels = array(field(j, path, "basis"), lp);
    if (labels.size() != dim) throw FieldError(lp, "expected " + std::to_string(dim) + " labels");
    for (std::size_t i = 0; i < dim; ++i) {
        if (!labels[i].is_string()) throw FieldError(at(lp, i), "expected a string");
        d.alg.labels.push_back(labels[i].get<std::string>());
    }
    d.alg.table.assign(dim * dim, Sparse{});
    auto quad = [&](const json& t, const std::string& p, std::size_t b0, std::size_t b1, std::size_t b2) {
        if (!t.is_array() || t.size() != 4) throw FieldError(p, "expected [index, index, index, scalar]");
        std::array<std::size_t, 3> ix{};
        std::array<std::size_t, 3> bounds{b0, b1, b2};
        for (std::size_t k = 0; k < 3; ++k) {
            long v = integer(t[k], at(p, k));
            if (v < 0 || static_cast<std::size_t>(v) >= bounds[k]) throw FieldError(at(p, k), "index out of range");
            ix[k] = static_cast<std::size_t>(v);
        }
        return std::pair{ix, scalar_from_json(t[3], at(p, 3))};
    };
    std::string mp = at(path, "mult");
    const json& mult = array(field(j, path, "mult"), mp);
    for (std::size_t r = 0; r < mult.size(); ++r) {
        auto [ix, c] = quad(mult[r], at(mp, r), dim, dim, dim);
        add_term(d.alg.table[ix[0] * dim + ix[1]], ix[2], c);
    }
    d.host_dim = j.contains("host_dim") ? static_cast<std::size_t>(integer(j["host_dim"], at(path, "host_dim"))) : 0;
    d.coaction.assign(dim, Sparse{});
    if (j.contains("coaction")) {
        std::string cp = at(path, "coaction");
        const json& co = array(j["coaction"], cp);
        for (std::size_t r = 0; r < co.size(); ++r) {
            auto [ix, c] = quad(co[r], at(cp, r), dim, d.host_dim, dim);
            add_term(d.coaction[ix[0]], ix[1] * dim + ix[2], c);
        }
    }
    return d;
}

AlgebraDump dump_of(const HopfAlg& H) {
    AlgebraDump d{H.alg(), H.dim(), {}};
    for (std::size_t i = 0; i < H.dim(); ++i) d.coaction.push_back(H.delta(i));
    return d;
}

AlgebraDump dump_of(const ComodAlg& A) { return AlgebraDump{A.alg, A.host->dim(), A.coaction}; }

ProblemSpec spec_from_json(const json& j, bool group_only) {
    ProblemSpec s;
    if (group_only && j.is_object() && !j.contains("u") && !j.contains("V"))
        s.V.G = group_from_json(field(j, "", "group"), "group");
    else
        s.V = module_from_json(j, "");
    if (j.contains("datum")) s.datum = j["datum"];
    if (j.contains("datum2")) s.datum2 = j["datum2"];
    if (j.contains("bound")) {
        long b = integer(j["bound"], "bound");
        if (b < 1) throw FieldError("bound", "must be >= 1");
        s.bound = static_cast<std::size_t>(b);
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw FieldError("seed", "expected a nonnegative integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("suite")) {
        if (!j["suite"].is_string()) throw FieldError("suite", "expected a string");
        s.suite = j["suite"].get<std::string>();
    }
    return s;
}

json to_json(const ProblemSpec& s) {
    json out = s.V.u.empty() && s.V.G.rank() > 0 ? json{{"group", to_json(s.V.G)}} : to_json(s.V);
    if (s.datum) out["datum"] = *s.datum;
    if (s.datum2) out["datum2"] = *s.datum2;
    if (s.bound) out["bound"] = *s.bound;
    if (s.seed) out["seed"] = *s.seed;
    if (s.suite) out["suite"] = *s.suite;
    return out;
}

}  // namespace brpic::io

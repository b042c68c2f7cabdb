// brpic-kit: command-line front end over the brpic library.
//
// Exit codes: 0 ok, 1 verification failure, 2 input validation, 3 capacity, 4 internal error.

#include "brpic/brpic.hpp"
#include "brpic/errors.hpp"
#include "brpic/hopf.hpp"
#include "brpic/json_io.hpp"
#include "brpic/orth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace brpic;
using io::json;

namespace {

struct Options {
    std::string spec_path;
    bool json_out = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> bound;
    std::string suite = "all";
    std::string object = "supergroup";
    std::size_t reps = 4;
};

// Input problems that are not JSON shape errors (invalid data, wrong kinds).
struct InputError : std::runtime_error {
    InputError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path(std::move(path)) {}
    std::string path;
};

struct Context {
    Options opt;
    io::ProblemSpec spec;
    std::size_t bound() const { return opt.bound ? *opt.bound : spec.bound.value_or(256); }
    std::uint64_t seed() const { return opt.seed ? *opt.seed : spec.seed.value_or(1); }
    const GModule& V() const { return spec.V; }
};

io::ProblemSpec load_spec(const std::string& path, bool group_only) {
    std::ifstream in(path);
    if (!in) throw io::FieldError("--spec", "cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw io::FieldError("--spec", std::string("invalid JSON: ") + e.what());
    }
    return io::spec_from_json(j, group_only);
}

std::string show(const Coords& c) {
    std::ostringstream s;
    s << "(";
    for (std::size_t i = 0; i < c.size(); ++i) s << (i ? "," : "") << c[i];
    s << ")";
    return s.str();
}

std::string show(const Matrix& m) {
    std::ostringstream s;
    s << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s << (i ? ", [" : "[");
        for (std::size_t k = 0; k < m.cols(); ++k) s << (k ? ", " : "") << m(i, k).to_string();
        s << "]";
    }
    s << "]";
    return s.str();
}

std::string show(const std::vector<std::vector<int>>& m) {
    std::ostringstream s;
    s << "[";
    for (std::size_t i = 0; i < m.size(); ++i) s << (i ? ", " : "") << show(Coords(m[i]));
    s << "]";
    return s.str();
}

std::string show(const io::Datum& d) {
    std::ostringstream s;
    if (const auto* r = std::get_if<RDatum>(&d)) {
        s << "R-datum\n  alpha " << show(r->alpha.matrix()) << "\n  W basis " << show(r->W.basis())
          << " (dim " << r->W.dim() << ")\n  beta " << show(r->beta.gram) << "\n";
    } else {
        const auto& o = std::get<ODatum>(d);
        s << "O-datum\n  alpha " << show(o.alpha.matrix()) << "\n  T " << show(o.T) << "\n";
    }
    return s.str();
}

json datum_json(const io::Datum& d) {
    return std::visit([](const auto& x) { return io::to_json(x); }, d);
}

io::Datum read_datum(const Context& c, const std::optional<json>& j, const std::string& name) {
    if (!j) throw InputError(name, "missing field");
    return io::datum_from_json(*j, c.V(), name);
}

void require_valid(const Context& c, const io::Datum& d, const std::string& name) {
    Validation v = std::holds_alternative<RDatum>(d) ? validate_rdatum(c.V(), std::get<RDatum>(d))
                                                     : validate_odatum(c.V(), std::get<ODatum>(d));
    if (!v) throw InputError(name, v.reason);
}

RDatum as_rdatum(const Context& c, const io::Datum& d, const std::string& name) {
    if (const auto* r = std::get_if<RDatum>(&d)) return *r;
    try {
        return odatum_to_rdatum(c.V(), std::get<ODatum>(d));
    } catch (const DomainError& e) {
        throw InputError(name, e.what());
    }
}

// b converted to the presentation of a.
io::Datum like(const Context& c, const io::Datum& a, const io::Datum& b, const std::string& name) {
    if (a.index() == b.index()) return b;
    if (std::holds_alternative<RDatum>(a)) return as_rdatum(c, b, name);
    try {
        return rdatum_to_odatum(c.V(), std::get<RDatum>(b));
    } catch (const DomainError& e) {
        throw InputError(name, e.what());
    }
}

int emit(const Context& c, const json& j, const std::string& text, int code = 0) {
    if (c.opt.json_out)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
    return code;
}

std::string show(const FinAbGroup& G) {
    if (G.rank() == 0) return "1";
    std::string s;
    for (int f : G.factors()) s += (s.empty() ? "Z" : " x Z") + std::to_string(f);
    return s;
}

int alpha_order(const OrthAut& a) {
    OrthAut p = a;
    int k = 1;
    while (!p.is_identity()) {
        p = p * a;
        ++k;
    }
    return k;
}

// ---- orth ----

// psi_alpha costs a few ms per alpha; past this the table is not worth printing.
constexpr std::size_t kMaxTabulated = 4096;

int cmd_orth(const Context& c) {
    const FinAbGroup& G = c.V().G;
    auto all = enumerate_orth(G, c.bound());
    if (all.size() > kMaxTabulated)
        throw CapacityError(std::to_string(all.size()) + " automorphisms, more than " + std::to_string(kMaxTabulated) + " to tabulate");
    json autos = json::array();
    std::ostringstream t;
    t << "O(G + G^) for G = " << show(G) << ": " << all.size() << " automorphisms\n";
    for (std::size_t i = 0; i < all.size(); ++i) {
        const OrthAut& a = all[i];
        TwistedSubgroup tw = twisted_subgroup(a);
        json U = json::array();
        for (const auto& x : tw.U.elements()) U.push_back(io::element_to_json(x));
        json e{{"matrix", a.matrix()}, {"order", alpha_order(a)}, {"U_alpha", U}, };
        bool has_u = !c.V().u.empty();
        if (has_u) e["u_pair_in"] = u_pair_in(tw, c.V().u);
        t << "#" << i << " matrix " << show(a.matrix()) << " order " << alpha_order(a) << " |U_alpha| " << tw.U.order()
          << (has_u ? std::string(" (u,u) in U_alpha: ") + (u_pair_in(tw, c.V().u) ? "yes" : "no") : "");
        try {
            TwoCocycle psi = psi_alpha(a);
            bool cocycle = psi.is_normalized() && psi.is_cocycle();
            bool trivial = std::all_of(psi.table().begin(), psi.table().end(), [](int x) { return x == 0; });
            e["psi"] = io::to_json(psi);
            e["psi_cocycle"] = cocycle;
            t << " psi " << (trivial ? "trivial" : "nontrivial") << " cocycle: " << (cocycle ? "yes" : "no");
        } catch (const DomainError& err) {
            e["psi"] = {{"error", err.what()}};
            t << " psi: " << err.what();
        }
        t << "\n";
        autos.push_back(e);
    }
    json out{{"group", io::to_json(G)}, {"order", all.size()}, {"automorphisms", autos}};
    return emit(c, out, t.str());
}

// ---- brpic ----

int cmd_describe(const Context& c) {
    BrpicDescription d = describe_brpic(c.V(), c.bound());
    std::ostringstream t;
    t << "|O(G + G^)| = " << d.orth_order << "\n";
    t << "admissible alpha: " << d.component_count() << ", with invertible A: " << d.nonempty_components() << "\n";
    for (std::size_t i = 0; i < d.components.size(); ++i) {
        const auto& comp = d.components[i];
        t << "#" << i << " alpha " << show(comp.alpha.matrix()) << " A-dim " << comp.a_dim << " C-dim " << comp.c_dim
          << " invertible A: " << (comp.has_invertible_a ? "yes" : "no");
        if (comp.has_invertible_a) t << " D = A^-T equivariant: " << (comp.d_forced_equivariant ? "yes" : "no");
        t << "\n";
    }
    return emit(c, io::to_json(d), t.str());
}

int cmd_mul(const Context& c) {
    io::Datum a = read_datum(c, c.spec.datum, "datum"), b = read_datum(c, c.spec.datum2, "datum2");
    require_valid(c, a, "datum");
    require_valid(c, b, "datum2");
    b = like(c, a, b, "datum2");
    io::Datum p;
    if (std::holds_alternative<RDatum>(a)) {
        try {
            p = rdatum_product(c.V(), std::get<RDatum>(a), std::get<RDatum>(b));
        } catch (const DomainError& e) {
            throw InputError("datum2", e.what());
        }
    } else {
        p = odatum_product(c.V(), std::get<ODatum>(a), std::get<ODatum>(b));
        require_valid(c, p, "datum2");
    }
    return emit(c, json{{"product", datum_json(p)}}, "product: " + show(p));
}

int cmd_inv(const Context& c) {
    io::Datum a = read_datum(c, c.spec.datum, "datum");
    require_valid(c, a, "datum");
    if (const auto* r = std::get_if<RDatum>(&a)) {
        InverseResult inv = rdatum_inverse(c.V(), *r);
        json out{{"invertible", inv.invertible}};
        out["inverse"] = inv.inverse ? io::to_json(*inv.inverse) : json(nullptr);
        return emit(c, out, inv.invertible ? "inverse: " + show(io::Datum(*inv.inverse)) : std::string("not invertible\n"));
    }
    io::Datum inv = odatum_inverse(c.V(), std::get<ODatum>(a));
    return emit(c, json{{"invertible", true}, {"inverse", datum_json(inv)}}, "inverse: " + show(inv));
}

int cmd_equiv(const Context& c) {
    io::Datum a = read_datum(c, c.spec.datum, "datum"), b = read_datum(c, c.spec.datum2, "datum2");
    require_valid(c, a, "datum");
    require_valid(c, b, "datum2");
    b = like(c, a, b, "datum2");
    std::optional<Coords> w = std::holds_alternative<RDatum>(a)
                                  ? rdatum_equiv(c.V(), std::get<RDatum>(a), std::get<RDatum>(b))
                                  : odatum_equiv(c.V(), std::get<ODatum>(a), std::get<ODatum>(b));
    json out{{"equivalent", w.has_value()}};
    out["witness"] = w ? io::element_to_json(*w) : json(nullptr);
    return emit(c, out, w ? "equivalent via (x, y) = " + show(*w) + "\n" : std::string("not equivalent\n"));
}

int cmd_convert(const Context& c) {
    io::Datum a = read_datum(c, c.spec.datum, "datum");
    require_valid(c, a, "datum");
    io::Datum out;
    try {
        if (const auto* r = std::get_if<RDatum>(&a))
            out = rdatum_to_odatum(c.V(), *r);
        else
            out = odatum_to_rdatum(c.V(), std::get<ODatum>(a));
    } catch (const DomainError& e) {
        throw InputError("datum", e.what());
    }
    return emit(c, json{{"converted", datum_json(out)}}, "converted: " + show(out));
}

// ---- hopf ----

std::string check_line(const std::string& name, const CheckReport& r) {
    return std::string(r.ok ? "PASS " : "FAIL ") + name + (r.ok ? "" : ": " + r.failure) + "\n";
}

int cmd_build(const Context& c) {
    io::AlgebraDump d;
    std::string title;
    if (c.opt.object == "supergroup") {
        d = io::dump_of(*build_supergroup(c.V()));
        title = "A(V, u, G)";
    } else if (c.opt.object == "tensor") {
        d = io::dump_of(*build_tensor_hopf(c.V(), c.V()));
        title = "A(V, V, u, u, G, G)";
    } else if (c.opt.object == "L") {
        RDatum r = as_rdatum(c, read_datum(c, c.spec.datum, "datum"), "datum");
        require_valid(c, r, "datum");
        d = io::dump_of(*build_L(build_tensor_hopf(c.V(), c.V()), c.V(), r));
        title = "L(W, beta, alpha)";
    } else if (c.opt.object == "diag") {
        d = io::dump_of(*diag_comodule(c.V(), build_tensor_hopf(c.V(), c.V())));
        title = "diag(H)";
    } else {
        throw InputError("--object", "expected supergroup, tensor, L or diag");
    }
    std::ostringstream t;
    t << title << ": dim " << d.alg.dim << ", coacting dim " << d.host_dim << "\nbasis:";
    for (const auto& l : d.alg.labels) t << " " << l;
    t << "\n";
    return emit(c, io::to_json(d), t.str());
}

int cmd_check(const Context& c) {
    auto H = build_supergroup(c.V());
    auto B = build_tensor_hopf(c.V(), c.V());
    std::vector<std::pair<std::string, CheckReport>> rs{{"hopf-axioms A(V,u,G)", check_hopf(*H)},
                                                        {"hopf-axioms A(V,V,u,u,G,G)", check_hopf(*B)},
                                                        {"H^cop iso H", check_iso_cop(*H)}};
    if (c.spec.datum) {
        RDatum r = as_rdatum(c, read_datum(c, c.spec.datum, "datum"), "datum");
        require_valid(c, r, "datum");
        rs.push_back({"comodule-algebra L(datum)", check_comodule_algebra(*build_L(B, c.V(), r))});
    }
    json checks = json::array();
    std::string t;
    bool ok = true;
    for (const auto& [n, r] : rs) {
        checks.push_back({{"name", n}, {"ok", r.ok}, {"witness", r.failure}});
        t += check_line(n, r);
        ok = ok && r.ok;
    }
    return emit(c, json{{"ok", ok}, {"checks", checks}}, t, ok ? 0 : 1);
}

int cmd_cotensor(const Context& c) {
    RDatum a = as_rdatum(c, read_datum(c, c.spec.datum, "datum"), "datum");
    RDatum b = as_rdatum(c, read_datum(c, c.spec.datum2, "datum2"), "datum2");
    require_valid(c, a, "datum");
    require_valid(c, b, "datum2");
    auto B = build_tensor_hopf(c.V(), c.V());
    auto H = build_supergroup(c.V());
    Cotensor ct = cotensor(build_L(B, c.V(), a), build_L(B, c.V(), b), H);
    CheckReport closed = ct.closure();
    FreenessProbe fr = probe_freeness(ct);
    json out{{"dim_L", ct.L->dim()},
             {"dim_K", ct.K->dim()},
             {"dim", ct.dim()},
             {"closed", closed.ok},
             {"witness", closed.failure},
             {"free_basis_found", fr.free_basis_found},
             {"free_rank", fr.rank}};
    std::ostringstream t;
    t << "dim L " << ct.L->dim() << ", dim K " << ct.K->dim() << ", dim L box K " << ct.dim() << "\n"
      << check_line("cotensor is a subalgebra", closed) << "L (x) K free over the cotensor: "
      << (fr.free_basis_found ? "yes, rank " + std::to_string(fr.rank) : std::string("no basis found")) << "\n";
    return emit(c, out, t.str(), closed.ok ? 0 : 1);
}

int cmd_verify_iso(const Context& c) {
    RDatum a = as_rdatum(c, read_datum(c, c.spec.datum, "datum"), "datum");
    RDatum b = as_rdatum(c, read_datum(c, c.spec.datum2, "datum2"), "datum2");
    require_valid(c, a, "datum");
    require_valid(c, b, "datum2");
    if (!b.alpha.is_identity()) throw InputError("datum2.alpha", "must be the identity");
    CotensorIsoReport r = verify_cotensor_iso(c.V(), a, b);
    MapReport s1 = verify_sigma_isom(c.V(), DiagSlots::CopFirst), s2 = verify_sigma_isom(c.V(), DiagSlots::CopSecond);
    bool ok = r.check.ok && r.cotensor_dim == r.expected_dim && s1.check.ok && s2.check.ok;
    json out{{"ok", ok},
             {"cotensor_dim", r.cotensor_dim},
             {"expected_dim", r.expected_dim},
             {"image_rank", r.image_rank},
             {"cotensor_iso", r.check.ok},
             {"witness", r.check.failure},
             {"sigma_cop_first", s1.check.ok},
             {"sigma_cop_second", s2.check.ok}};
    std::ostringstream t;
    t << "dim L box K " << r.cotensor_dim << ", expected 2^dim(W.W~) |U_alpha| = " << r.expected_dim << "\n"
      << check_line("phi: L(W.W~) -> L box K isomorphism", r.check) << check_line("sigma (cop first)", s1.check)
      << check_line("sigma (cop second)", s2.check);
    return emit(c, out, t.str(), ok ? 0 : 1);
}

// ---- verify ----

struct Line {
    std::string suite, name;
    bool ok = true;
    std::string detail;
    bool info = false;  // reported, not counted
};

struct Suite {
    const Context& c;
    std::string name;
    std::vector<Line>& out;
    void check(const std::string& n, bool ok, const std::string& detail = {}) { out.push_back({name, n, ok, detail, false}); }
    void check(const std::string& n, const CheckReport& r, const std::string& detail = {}) {
        check(n, r.ok, r.ok ? detail : r.failure);
    }
    void info(const std::string& n, const std::string& detail) { out.push_back({name, n, true, detail, true}); }
};

std::vector<OrthAut> nonempty_alphas(const Context& c) {
    std::vector<OrthAut> out;
    for (const auto& comp : describe_brpic(c.V(), c.bound()).components)
        if (comp.has_invertible_a) out.push_back(comp.alpha);
    return out;
}

ODatum random_odatum(const Context& c, const std::vector<OrthAut>& alphas, std::mt19937_64& rng) {
    const OrthAut& a = alphas[rng() % alphas.size()];
    auto o = sample_odatum(c.V(), a, rng);
    if (!o) throw std::logic_error("component marked nonempty has no sample");
    return *o;
}

std::string dims(std::size_t a, std::size_t b) { return std::to_string(a) + " = " + std::to_string(b); }

void suite_hopf(Suite s) {
    auto H = build_supergroup(s.c.V());
    std::size_t expect = (std::size_t{1} << s.c.V().dim()) * s.c.V().G.order();
    s.check("dim A(V,u,G) = 2^dim V |G|", H->dim() == expect, dims(H->dim(), expect));
    s.check("hopf-axioms A(V,u,G)", check_hopf(*H));
    s.check("H^cop iso H", check_iso_cop(*H));
    try {
        auto B = build_tensor_hopf(s.c.V(), s.c.V());
        s.check("hopf-axioms A(V,V,u,u,G,G)", check_hopf(*B), "dim " + std::to_string(B->dim()));
    } catch (const CapacityError& e) {
        s.info("hopf-axioms A(V,V,u,u,G,G)", std::string("skipped: ") + e.what());
    }
}

void suite_comodule(Suite s, std::mt19937_64& rng, std::size_t reps) {
    const GModule& V = s.c.V();
    std::shared_ptr<HopfAlg> B;
    try {
        B = build_tensor_hopf(V, V);
    } catch (const CapacityError& e) {
        s.info("comodule suite", std::string("skipped: ") + e.what());
        return;
    }
    for (std::size_t i = 0; i < reps; ++i) {
        std::string tag = "K#" + std::to_string(i);
        CompatibleData d = sample_compatible(V, V, rng);
        try {
            auto K = build_K(B, d);
            std::size_t wdim = d.W1.dim() + d.W2.dim() + d.W3.dim();
            std::size_t expect = (std::size_t{1} << wdim) * d.F.order();
            s.check(tag + " comodule-algebra axioms", check_comodule_algebra(*K), "dim " + std::to_string(K->dim()));
            s.check(tag + " coinvariants = k", coinvariant_dim(*K) == 1, "dim " + std::to_string(coinvariant_dim(*K)));
            s.check(tag + " dim = 2^dim W |F|", K->dim() == expect, dims(K->dim(), expect));
        } catch (const CapacityError& e) {
            s.info(tag, std::string("skipped: ") + e.what());
        }
    }
    s.check("L(identity datum) comodule-algebra axioms", check_comodule_algebra(*build_L(B, V, rdatum_identity(V))));
    for (const auto& alpha : nonempty_alphas(s.c)) {
        auto o = sample_odatum(V, alpha, rng);
        s.check("L(sample, alpha " + show(alpha.matrix()) + ") comodule-algebra axioms",
                check_comodule_algebra(*build_L(B, V, odatum_to_rdatum(V, *o))));
    }
    for (auto slots : {DiagSlots::CopFirst, DiagSlots::CopSecond}) {
        std::string n = slots == DiagSlots::CopFirst ? "cop first" : "cop second";
        MapReport m = verify_sigma_isom(V, slots);
        s.check("sigma: L(diag V, 0, id) iso diag(H) (" + n + ")", m.check, "rank " + std::to_string(m.rank));
    }
    if (s.c.spec.datum) {
        RDatum r = as_rdatum(s.c, read_datum(s.c, s.c.spec.datum, "datum"), "datum");
        Validation v = validate_rdatum(V, r);
        s.check("datum is valid", v.ok, v.reason);
        if (v) s.check("L(datum) comodule-algebra axioms", check_comodule_algebra(*build_L(B, V, r)));
    }
}

void suite_cotensor(Suite s, std::mt19937_64& rng, std::size_t reps) {
    const GModule& V = s.c.V();
    auto alphas = nonempty_alphas(s.c);
    std::vector<OrthAut> ids{OrthAut::identity(V.G)};
    auto run = [&](const std::string& tag, const RDatum& a, const RDatum& b) {
        try {
            CotensorIsoReport r = verify_cotensor_iso(V, a, b);
            s.check(tag + " dim L box K = 2^dim(W.W~) |U_alpha|", r.cotensor_dim == r.expected_dim,
                    dims(r.cotensor_dim, r.expected_dim));
            s.check(tag + " phi is a comodule-algebra isomorphism", r.check, "rank " + std::to_string(r.image_rank));
        } catch (const CapacityError& e) {
            s.info(tag, std::string("skipped: ") + e.what());
        }
    };
    for (std::size_t i = 0; i < reps; ++i) {
        ODatum a = random_odatum(s.c, alphas, rng), b = random_odatum(s.c, ids, rng);
        run("pair#" + std::to_string(i), odatum_to_rdatum(V, a), odatum_to_rdatum(V, b));
    }
    if (s.c.spec.datum && s.c.spec.datum2) {
        RDatum a = as_rdatum(s.c, read_datum(s.c, s.c.spec.datum, "datum"), "datum");
        RDatum b = as_rdatum(s.c, read_datum(s.c, s.c.spec.datum2, "datum2"), "datum2");
        Validation va = validate_rdatum(V, a), vb = validate_rdatum(V, b);
        s.check("datum is valid", va.ok, va.reason);
        s.check("datum2 is valid", vb.ok, vb.reason);
        if (va && vb && b.alpha.is_identity()) run("spec pair", a, b);
    }
}

void suite_group(Suite s, std::mt19937_64& rng, std::size_t reps) {
    const GModule& V = s.c.V();
    auto alphas = nonempty_alphas(s.c);
    RDatum e = rdatum_identity(V);
    auto same = [](const RDatum& x, const RDatum& y) { return x.W == y.W && x.beta == y.beta && x.alpha == y.alpha; };
    std::size_t undefined = 0;
    for (std::size_t i = 0; i < reps; ++i) {
        std::string tag = "#" + std::to_string(i);
        ODatum a = random_odatum(s.c, alphas, rng), b = random_odatum(s.c, alphas, rng), cc = random_odatum(s.c, alphas, rng);
        ODatum l = odatum_product(V, odatum_product(V, a, b), cc), r = odatum_product(V, a, odatum_product(V, b, cc));
        s.check(tag + " associativity (T-data)", l.T == r.T && l.alpha == r.alpha);
        RDatum ra = odatum_to_rdatum(V, a);
        s.check(tag + " identity", same(rdatum_product(V, ra, e), ra) && same(rdatum_product(V, e, ra), ra));
        InverseResult inv = rdatum_inverse(V, ra);
        s.check(tag + " inverse up to equivalence",
                inv.invertible && rdatum_equiv(V, rdatum_product(V, ra, *inv.inverse), e).has_value());
        RDatum rb = odatum_to_rdatum(V, b), rc = odatum_to_rdatum(V, cc);
        try {
            RDatum ab = rdatum_product(V, ra, rb);
            s.check(tag + " tau(a.b) = tau(a) o tau(b)",
                    tau(V, ab.W, ab.beta) == lag_product(V, tau(V, ra.W, ra.beta), tau(V, rb.W, rb.beta)));
            RDatum left = rdatum_product(V, ab, rc), right = rdatum_product(V, ra, rdatum_product(V, rb, rc));
            s.check(tag + " associativity (R-data)", same(left, right));
        } catch (const DomainError&) {
            ++undefined;
        }
        ODatum back = rdatum_to_odatum(V, ra);
        s.check(tag + " T -> R -> T round trip up to equivalence", odatum_equiv(V, back, a).has_value());
    }
    s.info("products outside the (u, u) condition", std::to_string(undefined) + " of " + std::to_string(reps));
}

int cmd_verify(const Context& c) {
    static const std::vector<std::string> names{"hopf", "comodule", "cotensor", "group-axioms"};
    const std::string& which = c.spec.suite && c.opt.suite == "all" ? *c.spec.suite : c.opt.suite;
    if (which != "all" && std::find(names.begin(), names.end(), which) == names.end())
        throw InputError("--suite", "expected hopf, comodule, cotensor, group-axioms or all");
    std::vector<Line> lines;
    for (std::size_t k = 0; k < names.size(); ++k) {
        if (which != "all" && which != names[k]) continue;
        // each suite has its own stream so that its report does not depend on which others ran
        std::mt19937_64 rng(c.seed() * 4 + k);
        Suite s{c, names[k], lines};
        if (k == 0) suite_hopf(s);
        if (k == 1) suite_comodule(s, rng, c.opt.reps);
        if (k == 2) suite_cotensor(s, rng, c.opt.reps);
        if (k == 3) suite_group(s, rng, c.opt.reps);
    }
    std::size_t failed = 0, passed = 0;
    json checks = json::array();
    std::ostringstream t;
    for (const auto& l : lines) {
        if (!l.info) (l.ok ? passed : failed)++;
        checks.push_back({{"suite", l.suite}, {"name", l.name}, {"status", l.info ? "info" : l.ok ? "pass" : "fail"}, {"detail", l.detail}});
        t << (l.info ? "INFO " : l.ok ? "PASS " : "FAIL ") << l.suite << "/" << l.name << (l.detail.empty() ? "" : " [" + l.detail + "]") << "\n";
    }
    t << passed << " passed, " << failed << " failed\n";
    json out{{"suite", which}, {"seed", c.seed()}, {"passed", passed}, {"failed", failed}, {"checks", checks}};
    return emit(c, out, t.str(), failed == 0 ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brauer-Picard groups of supergroup algebra representation categories"};
    app.require_subcommand(1);
    Options opt;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--spec", opt.spec_path, "JSON problem specification")->required();
        sub->add_flag("--json", opt.json_out, "machine-readable output");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--bound", opt.bound, "enumeration bound on |G|^2");
    };
    using Cmd = int (*)(const Context&);
    Cmd chosen = nullptr;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Cmd f) {
        CLI::App* sub = parent->add_subcommand(name, help);
        common(sub);
        sub->callback([&chosen, f] { chosen = f; });
        return sub;
    };
    leaf(&app, "orth", "enumerate O(G + G^), U_alpha and psi_alpha", cmd_orth);
    CLI::App* br = app.add_subcommand("brpic", "Brauer-Picard data")->require_subcommand(1);
    leaf(br, "describe", "components of the description by (T, alpha) data", cmd_describe);
    leaf(br, "mul", "product of datum and datum2", cmd_mul);
    leaf(br, "inv", "inverse of datum", cmd_inv);
    leaf(br, "equiv", "equivalence witness between datum and datum2", cmd_equiv);
    leaf(br, "convert", "convert datum between the R and O presentations", cmd_convert);
    CLI::App* hp = app.add_subcommand("hopf", "Hopf and comodule algebras")->require_subcommand(1);
    leaf(hp, "build", "dump structure constants", cmd_build)
        ->add_option("--object", opt.object, "supergroup, tensor, L or diag")
        ->check(CLI::IsMember({"supergroup", "tensor", "L", "diag"}));
    leaf(hp, "check", "Hopf and comodule axiom checks", cmd_check);
    leaf(hp, "cotensor", "cotensor product of L(datum) and L(datum2)", cmd_cotensor);
    leaf(hp, "verify-iso", "cotensor isomorphism and sigma isomorphism", cmd_verify_iso);
    CLI::App* vf = leaf(&app, "verify", "seeded verification suites", cmd_verify);
    vf->add_option("--suite", opt.suite, "hopf, comodule, cotensor, group-axioms or all")
        ->check(CLI::IsMember({"hopf", "comodule", "cotensor", "group-axioms", "all"}));
    vf->add_option("--reps", opt.reps, "random instances per suite")->check(CLI::Range(1, 1000));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        Context c{opt, load_spec(opt.spec_path, chosen == cmd_orth)};
        return chosen(c);
    } catch (const io::FieldError& e) {
        std::cerr << "input error at " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "input error at " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "capacity exceeded: " << e.what() << "\n";
        return 3;
    } catch (const StructuralError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}

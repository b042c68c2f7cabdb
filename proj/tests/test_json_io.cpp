#include <doctest.h>

#include "brpic/json_io.hpp"

#include <functional>
#include <random>

using namespace brpic;
using io::json;

namespace {

std::vector<GModule> modules() {
    return {GModule{FinAbGroup({2}), {1}, {{1}}},
            GModule{FinAbGroup({4}), {2}, {{1}, {3}}},
            GModule{FinAbGroup({2, 2}), {1, 1}, {{1, 0}, {0, 1}}}};
}

// Emit, print, re-read, emit again.
template <class T, class Read>
void round_trip(const T& x, Read read) {
    json j = io::to_json(x);
    json back = json::parse(j.dump());
    CHECK(back == j);
    CHECK(io::to_json(read(back)) == j);
}

std::string error_path(const std::function<void()>& f) {
    try {
        f();
    } catch (const io::FieldError& e) {
        return e.path;
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("scalars: text form and object form") {
    Scalar z = Cyclo::root_of_unity(4, 1) * Rational(3, 2) + Scalar(Rational(-1, 3));
    CHECK(io::scalar_from_json(io::to_json(z), "x") == z);
    json obj = io::cyclo_object(z);
    CHECK(obj["N"] == 4);
    CHECK(obj["coeffs"] == json::array({"-1/3", "3/2"}));
    CHECK(io::scalar_from_json(obj, "x") == z);
    CHECK(io::scalar_from_json(json(7), "x") == Scalar(7));
    CHECK(io::scalar_from_json(json{{"N", 4}, {"coeffs", {"0", "1"}}}, "x") == Cyclo::root_of_unity(4, 1));
    CHECK(error_path([] { io::scalar_from_json(json("1 +"), "a.b"); }) == "a.b");
    CHECK(error_path([] { io::scalar_from_json(json{{"N", 4}, {"coeffs", {"1/0"}}}, "s"); }) == "s.coeffs[0]");
}

TEST_CASE("groups, modules and problem specs round trip") {
    for (const auto& V : modules()) {
        round_trip(V.G, [](const json& j) { return io::group_from_json(j, ""); });
        round_trip(V, [](const json& j) { return io::module_from_json(j); });
        io::ProblemSpec s{V, io::to_json(rdatum_identity(V)), std::nullopt, 64, 9, "hopf"};
        json j = io::to_json(s);
        CHECK(io::to_json(io::spec_from_json(json::parse(j.dump()))) == j);
    }
    // bare arrays are accepted for elements and characters
    GModule V = io::module_from_json(json::parse(R"({"group":{"factors":[4]},"u":[2],"V":[[1],[-1]]})"));
    CHECK(V.chis == std::vector<Coords>{{1}, {3}});
}

TEST_CASE("data round trip") {
    std::mt19937_64 rng(11);
    for (const auto& V : modules()) {
        for (const auto& alpha : enumerate_orth(V.G)) {
            round_trip(alpha, [&](const json& j) { return io::orth_from_json(j, V.G, ""); });
            auto o = sample_odatum(V, alpha, rng);
            if (!o) continue;
            RDatum r = odatum_to_rdatum(V, *o);
            auto as_r = [&](const json& j) { return std::get<RDatum>(io::datum_from_json(j, V, "datum")); };
            auto as_o = [&](const json& j) { return std::get<ODatum>(io::datum_from_json(j, V, "datum")); };
            round_trip(r, as_r);
            round_trip(*o, as_o);
            RDatum r2 = as_r(io::to_json(r));
            CHECK(r2.W == r.W);
            CHECK(r2.beta == r.beta);
            CHECK(r2.alpha == r.alpha);
            CHECK(as_o(io::to_json(*o)).T == o->T);
        }
        json desc = io::to_json(describe_brpic(V));
        CHECK(json::parse(desc.dump()) == desc);
    }
}

TEST_CASE("beta given against a non-canonical basis is rewritten") {
    GModule V = modules()[0];
    // W = span (2, 1) with beta((2,1),(2,1)) = 2 is the graph of T = [[2,0],[1,1/2]]
    json d = json::parse(R"({"W":{"ambient":2,"basis":[["2","1"]]},"beta":{"gram":[["2"]]}})");
    RDatum r = std::get<RDatum>(io::datum_from_json(d, V, "datum"));
    Matrix T(2, 2);
    T(0, 0) = 2;
    T(1, 0) = 1;
    T(1, 1) = Scalar(Rational(1, 2));
    RDatum expect = odatum_to_rdatum(V, ODatum{T, OrthAut::identity(V.G)});
    CHECK(r.W == expect.W);
    CHECK(r.beta == expect.beta);
}

TEST_CASE("algebra dumps round trip") {
    GModule V = modules()[0];
    auto H = build_supergroup(V);
    auto B = build_tensor_hopf(V, V);
    auto L = build_L(B, V, rdatum_identity(V));
    for (const auto& d : {io::dump_of(*H), io::dump_of(*L)}) {
        json j = io::to_json(d);
        io::AlgebraDump back = io::algebra_from_json(json::parse(j.dump()), "");
        CHECK(back.alg.dim == d.alg.dim);
        CHECK(back.alg.labels == d.alg.labels);
        CHECK(back.alg.table == d.alg.table);
        CHECK(back.coaction == d.coaction);
        CHECK(io::to_json(back) == j);
    }
    CHECK(io::to_json(io::dump_of(*H))["mult"].size() > 0);
}

TEST_CASE("malformed input names the field") {
    GModule V = modules()[0];
    CHECK(error_path([] { io::module_from_json(json::parse(R"({"group":{"factors":[2]},"V":[]})")); }) == "u");
    CHECK(error_path([] { io::module_from_json(json::parse(R"({"group":{"factors":[0]},"u":[1],"V":[]})")); }) ==
          "group.factors[0]");
    CHECK(error_path([] { io::module_from_json(json::parse(R"({"group":{"factors":[2]},"u":[1,0],"V":[]})")); }) == "u");
    CHECK(error_path([] { io::module_from_json(json::parse(R"({"group":{"factors":[4]},"u":[1],"V":[]})")); }) == "u");
    CHECK(error_path([] { io::module_from_json(json::parse(R"({"group":{"factors":[2]},"u":[1],"V":[[0]]})")); }) == "V");
    CHECK(error_path([&] { io::datum_from_json(json::parse(R"({"kind":"Q"})"), V, "datum"); }) == "datum.kind");
    CHECK(error_path([&] { io::datum_from_json(json::parse(R"({"T":[["1"]]})"), V, "datum"); }) == "datum.T");
    CHECK(error_path([&] { io::datum_from_json(json::parse(R"({"T":[["1","0"],["0","1"]],"alpha":{"matrix":[[1,1],[0,1]]}})"), V, "d"); }) ==
          "d.alpha.matrix");
    CHECK(error_path([&] { io::datum_from_json(json::parse(R"({"W":{"ambient":2,"basis":[["1","1"],["2","2"]]}})"), V, "d"); }) ==
          "d.W.basis");
    CHECK(error_path([&] { io::datum_from_json(json::parse(R"({"W":{"ambient":2,"basis":[["1","1"]]},"beta":{"gram":[]}})"), V, "d"); }) ==
          "d.beta.gram");
    CHECK(error_path([] { io::algebra_from_json(json::parse(R"({"dim":1,"basis":["1"],"mult":[[0,0,1,"1"]]})"), "a"); }) ==
          "a.mult[0][2]");
    CHECK(error_path([] { io::spec_from_json(json::parse(R"({"group":{"factors":[2]},"u":[1],"V":[],"seed":-1})")); }) == "seed");
}

// Serial reference against OpenMP kernels: wall time and agreement of results.

#include "brpic/brpic.hpp"
#include "brpic/hopf.hpp"
#include "brpic/orth.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace brpic;

namespace {

double best_of(int reps, const std::function<void()>& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

template <class R>
void compare(const char* name, int reps, const std::function<R(Exec)>& kernel, const std::function<bool(const R&, const R&)>& agree) {
    R serial{}, parallel{};
    double ts = best_of(reps, [&] { serial = kernel(Exec::Serial); });
    double tp = best_of(reps, [&] { parallel = kernel(Exec::Parallel); });
    std::printf("%-40s serial %9.4fs  parallel %9.4fs  speedup %5.2fx  %s\n", name, ts, tp, ts / tp,
                agree(serial, parallel) ? "agree" : "DISAGREE");
}

}  // namespace

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::stoi(argv[1]) : 3;
    std::printf("threads: %d, best of %d\n", omp_get_max_threads(), reps);

    for (auto f : std::vector<std::vector<int>>{{4, 2}, {3, 3}, {2, 4}}) {
        FinAbGroup G(f);
        std::string name = "enumerate_orth Z" + std::to_string(f[0]) + " x Z" + std::to_string(f[1]);
        compare<std::vector<OrthAut>>(name.c_str(), reps, [&](Exec e) { return enumerate_orth(G, 256, e); },
                                      [](const auto& a, const auto& b) { return a == b; });
    }

    {
        GModule V{FinAbGroup({4, 2}), {2, 0}, {{1, 0}, {1, 1}, {3, 0}}};
        std::mt19937_64 rng(1);
        RDatum a = odatum_to_rdatum(V, *sample_odatum(V, OrthAut::identity(V.G), rng));
        RDatum b = odatum_to_rdatum(V, *sample_odatum(V, OrthAut::identity(V.G), rng));
        compare<std::optional<Coords>>("rdatum_equiv (no witness) Z4 x Z2", reps, [&](Exec e) { return rdatum_equiv(V, a, b, e); },
                                       [](const auto& x, const auto& y) { return x == y; });
    }

    auto same_report = [](const CheckReport& x, const CheckReport& y) { return x.ok == y.ok && x.failure == y.failure; };
    {
        GModule V1{FinAbGroup({8}), {4}, {{1}, {3}, {5}}}, V2{FinAbGroup({4}), {2}, {{1}}};
        auto B = build_tensor_hopf(V1, V2);
        std::string name = "check_hopf dim " + std::to_string(B->dim());
        compare<CheckReport>(name.c_str(), reps, [&](Exec e) { return check_hopf(*B, e); }, same_report);
        compare<CheckReport>("check_hopf dim 64, all triples", reps,
                             [&](Exec e) { return check_hopf(*build_supergroup(V1), e, 64); }, same_report);
    }

    {
        GModule V{FinAbGroup({2, 2}), {1, 1}, {{1, 0}, {0, 1}}};
        std::mt19937_64 rng(3);
        CompatibleData d = sample_compatible(V, V, rng);
        auto K = build_K(d);
        std::string name = "check_comodule_algebra dim " + std::to_string(K->dim());
        compare<CheckReport>(name.c_str(), reps, [&](Exec e) { return check_comodule_algebra(*K, e); }, same_report);
    }
    return 0;
}

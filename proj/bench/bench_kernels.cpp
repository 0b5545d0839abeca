// Parallel kernels against their serial references.
#include "strongcurv/construct.hpp"
#include "strongcurv/curvature.hpp"
#include "strongcurv/liealg.hpp"
#include "strongcurv/sdp.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace strongcurv;

namespace {

Mat random_symmetric(int size, std::mt19937_64& g) {
    std::normal_distribution<double> nd;
    Mat m(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) m(i, j) = nd(g);
    return 0.5 * (m + m.transpose());
}

struct SchurInput {
    std::vector<SpMat> a;
    Mat x, zinv;
};

SchurInput schur_input(int count, int size) {
    std::mt19937_64 g(7);
    SchurInput in;
    for (int k = 0; k < count; ++k) in.a.push_back(to_sparse(random_symmetric(size, g)));
    const Mat m = random_symmetric(size, g);
    in.x = m * m + Mat::Identity(size, size);
    in.zinv = in.x.inverse();
    return in;
}

void BM_schur(benchmark::State& st) {
    const auto in = schur_input(static_cast<int>(st.range(0)), 78);
    for (auto _ : st) benchmark::DoNotOptimize(schur_matrix(in.a, in.x, in.zinv));
}
void BM_schur_serial(benchmark::State& st) {
    const auto in = schur_input(static_cast<int>(st.range(0)), 78);
    for (auto _ : st) benchmark::DoNotOptimize(schur_matrix_serial(in.a, in.x, in.zinv));
}
BENCHMARK(BM_schur)->Arg(32)->Arg(128);
BENCHMARK(BM_schur_serial)->Arg(32)->Arg(128);

SymOp b13_op() { return wallach(build_split(SpaceSpec::b13()), 0.5).op; }

void BM_min_sec(benchmark::State& st) {
    const SymOp r = b13_op();
    for (auto _ : st) benchmark::DoNotOptimize(min_sec_estimate(r, 16, 1));
}
void BM_min_sec_serial(benchmark::State& st) {
    const SymOp r = b13_op();
    for (auto _ : st) benchmark::DoNotOptimize(min_sec_estimate_serial(r, 16, 1));
}
BENCHMARK(BM_min_sec)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_min_sec_serial)->Unit(benchmark::kMillisecond);

void BM_gauss_bonnet(benchmark::State& st) {
    std::mt19937_64 g(3);
    const SymOp r(6, random_symmetric(15, g));
    for (auto _ : st) benchmark::DoNotOptimize(gauss_bonnet(r));
}
void BM_gauss_bonnet_serial(benchmark::State& st) {
    std::mt19937_64 g(3);
    const SymOp r(6, random_symmetric(15, g));
    for (auto _ : st) benchmark::DoNotOptimize(gauss_bonnet_serial(r));
}
BENCHMARK(BM_gauss_bonnet);
BENCHMARK(BM_gauss_bonnet_serial);

struct GramInput {
    std::vector<Mat> ads;
    int n;
    std::vector<int> sel;
};

GramInput gram_input() {
    const auto s = build_split(SpaceSpec::b13());
    const auto tan = s.tangent();
    GramInput in;
    in.n = static_cast<int>(tan.size());
    for (int hi : s.h) {
        Mat a(in.n, in.n);
        for (int i = 0; i < in.n; ++i)
            for (int j = 0; j < in.n; ++j) a(i, j) = s.algebra.c(hi, tan[j], tan[i]);
        in.ads.push_back(a);
    }
    for (int c = 0; c < binomial(in.n, 4); ++c) in.sel.push_back(c);
    return in;
}

void BM_derivation_gram(benchmark::State& st) {
    const auto in = gram_input();
    for (auto _ : st) benchmark::DoNotOptimize(derivation_gram(in.ads, in.n, 4, in.sel));
}
void BM_derivation_gram_serial(benchmark::State& st) {
    const auto in = gram_input();
    for (auto _ : st) benchmark::DoNotOptimize(derivation_gram_serial(in.ads, in.n, 4, in.sel));
}
BENCHMARK(BM_derivation_gram)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_derivation_gram_serial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

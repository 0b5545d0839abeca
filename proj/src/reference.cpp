#include "strongcurv/reference.hpp"

#include "strongcurv/construct.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <string>

namespace strongcurv {

namespace {

using Terms = std::vector<PairTerm>;

// 1-based labels
PairTerm e(double c, int a, int b) { return {c, a - 1, b - 1}; }

FourForm tensor(int n, const Terms& left, const Terms& right) {
    return wedge_forms(two_vector(n, left), two_vector(n, right));
}

Mat columns(int n, const std::vector<Terms>& vecs, const std::vector<int>& rows) {
    Mat out(static_cast<long>(rows.size()), static_cast<long>(vecs.size()));
    for (std::size_t k = 0; k < vecs.size(); ++k) {
        const Vec v = two_vector(n, vecs[k]);
        for (std::size_t r = 0; r < rows.size(); ++r) out(static_cast<long>(r), static_cast<long>(k)) = v[rows[r]];
    }
    return out;
}

const char* kW12Kernel =
    "5 9 8 12;-5 10 8 11;5 11 8 10;-5 12 8 9;5 10 7 12;5 9 7 11;-5 12 7 10;-5 11 7 9;-5 11 6 12;5 12 6 11;"
    "5 9 6 10;-5 10 6 9;-1 9 4 12;-1 10 4 11;1 11 4 10;1 12 4 9;1 10 3 12;-1 9 3 11;-1 12 3 10;1 11 3 9;"
    "-1 11 2 12;1 12 2 11;-1 9 2 10;1 10 2 9";

const char* kB13Kernel =
    "-2 9 8 13;-1 9 8 12;-4 9 8 11;3 9 8 10;1 12 8 9;-1 9 7 13;2 9 7 12;-3 9 7 11;-4 9 7 10;1 13 7 9;"
    "4 9 6 13;-3 9 6 12;-2 9 6 11;-1 9 6 10;1 10 6 9;3 9 5 13;4 9 5 12;-1 9 5 11;2 9 5 10;1 11 5 9;"
    "1 10 4 13;1 11 4 12;-1 12 4 11;-1 13 4 10;1 11 3 13;-1 10 3 12;-1 13 3 11;1 12 3 10;-1 12 2 13;"
    "1 13 2 12;-1 10 2 11;1 11 2 10";

ReferenceCase w6_case() {
    const int n = 6;
    const std::vector<Terms> ker{{e(1, 3, 5), e(1, 4, 6)},
                                 {e(-1, 3, 6), e(1, 4, 5)},
                                 {e(-1, 1, 5), e(1, 2, 6)},
                                 {e(1, 1, 6), e(1, 2, 5)}};
    return {columns(n, ker, mixed_pairs(4, 2)), tensor(n, {e(1, 1, 2), e(-1, 3, 4)}, {e(1, 5, 6)})};
}

ReferenceCase w12_case() {
    const int n = 12;
    FourForm tau = tensor(n, {e(1, 5, 6), e(1, 7, 8)}, {e(1, 11, 12), e(-1, 9, 10)}) +
                   tensor(n, {e(1, 6, 8), e(-1, 5, 7)}, {e(1, 9, 11), e(1, 10, 12)}) +
                   tensor(n, {e(1, 5, 8), e(1, 6, 7)}, {e(1, 10, 11), e(-1, 9, 12)}) +
                   tensor(n, {e(1, 1, 2), e(1, 3, 4)}, {e(1, 9, 10), e(1, 11, 12)}) +
                   tensor(n, {e(1, 1, 3), e(-1, 2, 4)}, {e(1, 9, 11), e(-1, 10, 12)}) +
                   tensor(n, {e(1, 1, 4), e(1, 2, 3)}, {e(1, 9, 12), e(1, 10, 11)});
    return {columns(n, parse_kernel_list(kW12Kernel), mixed_pairs(8, 4)), tau};
}

ReferenceCase b13_case() {
    const int n = 13;
    FourForm tau = tensor(n, {e(-1, 3, 4), e(1, 1, 2)}, {e(1, 10, 11), e(1, 12, 13)}) +
                   tensor(n, {e(1, 1, 3), e(1, 2, 4)}, {e(1, 10, 12), e(-1, 11, 13)}) +
                   tensor(n, {e(-1, 1, 4), e(1, 2, 3)}, {e(1, 10, 13), e(1, 11, 12)}) +
                   tensor(n, {e(-1, 5, 6), e(1, 7, 8)}, {e(1, 10, 11), e(-1, 12, 13)}) +
                   tensor(n, {e(1, 5, 7), e(1, 6, 8)}, {e(1, 10, 12), e(1, 11, 13)}) +
                   tensor(n, {e(-1, 5, 8), e(1, 6, 7)}, {e(1, 10, 13), e(-1, 11, 12)}) +
                   tensor(n, {e(1, 1, 6), e(-1, 2, 5), e(-1, 3, 8), e(1, 4, 7)}, {e(1, 9, 10)}) +
                   tensor(n, {e(1, 1, 5), e(1, 2, 6), e(1, 3, 7), e(1, 4, 8)}, {e(1, 9, 11)}) +
                   tensor(n, {e(1, 1, 8), e(-1, 2, 7), e(1, 3, 6), e(-1, 4, 5)}, {e(1, 9, 12)}) +
                   tensor(n, {e(1, 1, 7), e(1, 2, 8), e(-1, 3, 5), e(-1, 4, 6)}, {e(1, 9, 13)});
    return {columns(n, parse_kernel_list(kB13Kernel), mixed_pairs(8, 5)), tau};
}

ReferenceCase w7_case(int k, int l) {
    const int n = 7;
    const double r = static_cast<double>(k) / l, s = 1 + r + r * r;
    const double a = std::sqrt(s / 3), b = r * std::sqrt(3 / s);
    const std::vector<Terms> ker{{e(-a, 2, 5), e(1, 4, 7)}, {e(-a, 1, 5), e(1, 4, 6)}, {e(b, 1, 6), e(1, 4, 5)},
                                 {e(-a, 1, 5), e(1, 3, 7)}, {e(a, 2, 5), e(1, 3, 6)}, {e(b, 1, 7), e(1, 3, 5)},
                                 {e(-1, 1, 6), e(1, 2, 7)}, {e(1, 1, 7), e(1, 2, 6)}};
    return {columns(n, ker, mixed_pairs(4, 3)), w7_tau(1.0, -1.0)};
}

// The published list is labelled e4..e10; shifted here to e1..e7.
ReferenceCase b7_case() {
    const int n = 7;
    const double r35 = 3 * std::sqrt(3.0 / 5.0), t53 = std::sqrt(5.0 / 3.0);
    auto f = [](double c, int a, int b) { return e(c, a - 3, b - 3); };
    const std::vector<Terms> ker{
        {f(1, 4, 5), f(1, 6, 9)},
        {f(1, 4, 6), f(r35, 4, 9), f(r35, 5, 6), f(-1, 5, 9)},
        {f(1, 4, 5), f(-1, 7, 8)},
        {f(1, 4, 6), f(r35, 4, 9), f(r35, 5, 6), f(1, 8, 10)},
        {f(1, 4, 8), f(-1, 5, 7)},
        {f(1, 4, 10), f(t53 / 3, 5, 10), f(t53 / 3, 6, 7), f(1, 6, 8)},
        {f(1, 4, 8), f(-1, 6, 10)},
        {f(1, 4, 10), f(2 * t53 / 3, 5, 10), f(2 * t53 / 3, 6, 7), f(1, 7, 9)},
        {f(1, 5, 10), f(-1, 8, 9)},
        {f(1, 4, 9), f(2, 5, 6), f(1, 7, 10)},
        {f(1.25, 4, 7), f(0.25, 5, 8), f(1, 9, 10)}};
    std::vector<int> all(static_cast<std::size_t>(binomial(n, 2)));
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    const FourForm omega = form_from_terms(n, {{1, {0, 1, 2, 5}},
                                               {-1, {0, 1, 3, 4}},
                                               {1, {0, 3, 5, 6}},
                                               {-1, {1, 4, 5, 6}},
                                               {1, {0, 2, 4, 6}},
                                               {1, {1, 2, 3, 6}},
                                               {1, {2, 3, 4, 5}}});
    return {columns(n, ker, all), omega};
}

}  // namespace

std::vector<std::vector<PairTerm>> parse_kernel_list(const char* text) {
    std::vector<Terms> out;
    std::stringstream all(text);
    std::string item;
    while (std::getline(all, item, ';')) {
        std::istringstream in(item);
        int a, b, c, d;
        if (!(in >> a >> b >> c >> d)) throw std::invalid_argument("parse_kernel_list: bad item '" + item + "'");
        out.push_back({e(a > 0 ? 1.0 : -1.0, std::abs(a), b), e(1.0, c, d)});
    }
    return out;
}

FourForm w7_tau(double a, double b) {
    const int n = 7;
    const double s3 = std::sqrt(3.0);
    return tensor(n, {e(a, 1, 2), e(b, 3, 4)}, {e(1, 6, 7)}) + tensor(n, {e(s3, 1, 3), e(s3, 2, 4)}, {e(1, 5, 7)}) +
           tensor(n, {e(s3, 1, 4), e(-s3, 2, 3)}, {e(1, 5, 6)});
}

bool w7_tau_admissible(int k, int l, double a, double b) {
    const double r = static_cast<double>(k) / l, s = 1 + r + r * r;
    const double q = 4 * std::sqrt(s);
    return a > 0 && a - r * a * a / q > 0 && b + b * b / q < 0;
}

std::optional<ReferenceCase> reference_case(const SpaceSpec& spec) {
    switch (spec.kind) {
        case SpaceSpec::Kind::w6: return w6_case();
        case SpaceSpec::Kind::w12: return w12_case();
        case SpaceSpec::Kind::b13: return b13_case();
        case SpaceSpec::Kind::w7: return w7_case(spec.k, spec.l);
        case SpaceSpec::Kind::b7: return b7_case();
        default: return std::nullopt;
    }
}

}  // namespace strongcurv

#include "wavepp/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "wavepp/error.hpp"

namespace wavepp {

Poly2::Poly2(int degree) : degree_(degree), c_(static_cast<std::size_t>((degree + 1) * (degree + 1)), 0.0) {
    require(degree >= 0, "Poly2: negative degree");
}

Poly2 Poly2::constant(double c) {
    Poly2 p(0);
    p.c_[0] = c;
    return p;
}

Poly2 Poly2::x() { return monomial(1, 0); }
Poly2 Poly2::y() { return monomial(0, 1); }

Poly2 Poly2::monomial(int a, int b, double c) {
    Poly2 p(a + b);
    p.set_coeff(a, b, c);
    return p;
}

double Poly2::coeff(int a, int b) const noexcept {
    if (a < 0 || b < 0 || a + b > degree_) return 0.0;
    return c_[idx(a, b)];
}

void Poly2::set_coeff(int a, int b, double c) {
    require(a >= 0 && b >= 0, "Poly2: negative exponent");
    if (a + b > degree_) grow(a + b);
    c_[idx(a, b)] = c;
}

void Poly2::grow(int degree) {
    if (degree <= degree_) return;
    Poly2 g(degree);
    for (int a = 0; a <= degree_; ++a)
        for (int b = 0; a + b <= degree_; ++b) g.c_[g.idx(a, b)] = c_[idx(a, b)];
    *this = std::move(g);
}

double Poly2::operator()(const Point& p) const {
    // Horner in y for each power of x, then Horner in x.
    double result = 0.0;
    for (int a = degree_; a >= 0; --a) {
        double inner = 0.0;
        for (int b = degree_ - a; b >= 0; --b) inner = inner * p[1] + c_[idx(a, b)];
        result = result * p[0] + inner;
    }
    return result;
}

Poly2 Poly2::dx() const {
    if (degree_ == 0) return constant(0.0);
    Poly2 d(degree_ - 1);
    for (int a = 1; a <= degree_; ++a)
        for (int b = 0; a + b <= degree_; ++b) d.c_[d.idx(a - 1, b)] = a * c_[idx(a, b)];
    return d;
}

Poly2 Poly2::dy() const {
    if (degree_ == 0) return constant(0.0);
    Poly2 d(degree_ - 1);
    for (int a = 0; a <= degree_; ++a)
        for (int b = 1; a + b <= degree_; ++b) d.c_[d.idx(a, b - 1)] = b * c_[idx(a, b)];
    return d;
}

Poly2 Poly2::derivative(int a, int b) const {
    Poly2 d = *this;
    for (int i = 0; i < a; ++i) d = d.dx();
    for (int i = 0; i < b; ++i) d = d.dy();
    return d;
}

Poly2& Poly2::operator+=(const Poly2& o) {
    grow(o.degree_);
    for (int a = 0; a <= o.degree_; ++a)
        for (int b = 0; a + b <= o.degree_; ++b) c_[idx(a, b)] += o.c_[o.idx(a, b)];
    return *this;
}

Poly2& Poly2::operator-=(const Poly2& o) {
    grow(o.degree_);
    for (int a = 0; a <= o.degree_; ++a)
        for (int b = 0; a + b <= o.degree_; ++b) c_[idx(a, b)] -= o.c_[o.idx(a, b)];
    return *this;
}

Poly2& Poly2::operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
}

Poly2 operator*(const Poly2& p, const Poly2& q) {
    Poly2 r(p.degree_ + q.degree_);
    for (int a = 0; a <= p.degree_; ++a)
        for (int b = 0; a + b <= p.degree_; ++b) {
            const double pc = p.c_[p.idx(a, b)];
            if (pc == 0.0) continue;
            for (int c = 0; c <= q.degree_; ++c)
                for (int d = 0; c + d <= q.degree_; ++d) r.c_[r.idx(a + c, b + d)] += pc * q.c_[q.idx(c, d)];
        }
    return r;
}

double Poly2::max_abs_coeff() const noexcept {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

std::array<Poly2, 3> barycentric_polys() {
    Poly2 l0 = Poly2::constant(1.0) - Poly2::x() - Poly2::y();
    return {l0, Poly2::x(), Poly2::y()};
}

}  // namespace wavepp

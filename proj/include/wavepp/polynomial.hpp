#pragma once

#include <array>
#include <vector>

namespace wavepp {

/// Point in reference or physical coordinates. One-dimensional data uses [0].
using Point = std::array<double, 2>;

/// Bivariate polynomial sum c_ab x^a y^b with a + b <= degree, stored densely.
/// Univariate polynomials are the special case without y terms.
class Poly2 {
public:
    Poly2() = default;
    explicit Poly2(int degree);
    static Poly2 constant(double c);
    static Poly2 x();
    static Poly2 y();
    static Poly2 monomial(int a, int b, double c = 1.0);

    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] double coeff(int a, int b) const noexcept;
    void set_coeff(int a, int b, double c);

    [[nodiscard]] double operator()(const Point& p) const;
    [[nodiscard]] Poly2 dx() const;
    [[nodiscard]] Poly2 dy() const;
    /// Mixed partial derivative d^(a+b) / dx^a dy^b.
    [[nodiscard]] Poly2 derivative(int a, int b) const;

    Poly2& operator+=(const Poly2& o);
    Poly2& operator-=(const Poly2& o);
    Poly2& operator*=(double s);
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(Poly2 a, double s) { return a *= s; }
    friend Poly2 operator*(double s, Poly2 a) { return a *= s; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b);

    /// Largest |c_ab| over all coefficients.
    [[nodiscard]] double max_abs_coeff() const noexcept;

private:
    [[nodiscard]] std::size_t idx(int a, int b) const noexcept {
        return static_cast<std::size_t>(a) * (degree_ + 1) + b;
    }
    void grow(int degree);

    int degree_ = 0;
    std::vector<double> c_{0.0};
};

/// Barycentric coordinates of the reference triangle (0,0), (1,0), (0,1):
/// lambda_0 = 1 - x - y, lambda_1 = x, lambda_2 = y.
[[nodiscard]] std::array<Poly2, 3> barycentric_polys();
[[nodiscard]] inline std::array<double, 3> barycentric(const Point& p) {
    return {1.0 - p[0] - p[1], p[0], p[1]};
}

}  // namespace wavepp

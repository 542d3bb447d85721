#include "wavepp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wavepp/error.hpp"

namespace wavepp {

namespace {

enum class OrbitKind { centroid, s21, s111 };

struct Orbit {
    OrbitKind kind;
    double a;
    double b;
    double w;
};

// Fully symmetric triangle rules, one per exactness degree 1..12.
// Orbits are in barycentric form: s21 expands (a, a, 1-2a), s111 expands
// all permutations of (a, b, 1-a-b). Weights sum to 1/2.
const std::vector<std::vector<Orbit>> kTriangleRules = {
    // degree 1
    {{OrbitKind::centroid, 0.0, 0.0, 0.5}},
    // degree 2
    {{OrbitKind::s21, 0.16666666666666667, 0.0, 0.16666666666666667}},
    // degree 3
    {{OrbitKind::s21, 0.44845615343891924, 0.0, 0.070208463159870623},
     {OrbitKind::s21, 0.13750266645587475, 0.0, 0.096458203506796044}},
    // degree 4
    {{OrbitKind::s21, 0.44594849091596489, 0.0, 0.11169079483900573},
     {OrbitKind::s21, 0.091576213509770743, 0.0, 0.054975871827660934}},
    // degree 5
    {{OrbitKind::centroid, 0.0, 0.0, 0.1125},
     {OrbitKind::s21, 0.47014206410511509, 0.0, 0.06619707639425309},
     {OrbitKind::s21, 0.10128650732345634, 0.0, 0.062969590272413576}},
    // degree 6
    {{OrbitKind::s21, 0.21942998254978296, 0.0, 0.085666562076490515},
     {OrbitKind::s21, 0.48013796411221504, 0.0, 0.040365544796515489},
     {OrbitKind::s111, 0.83900925971479105, 0.019371724361240788, 0.020317279896830331}},
    // degree 7
    {{OrbitKind::s21, 0.41701895105318641, 0.0, 0.016104743962417438},
     {OrbitKind::s21, 0.23509172302702267, 0.0, 0.054758727016474388},
     {OrbitKind::s21, 0.064492207612960011, 0.0, 0.026181468781266084},
     {OrbitKind::s111, 0.3122120959537074, 0.043919243570152985, 0.034810863453254378}},
    // degree 8
    {{OrbitKind::centroid, 0.0, 0.0, 0.072157803838893584},
     {OrbitKind::s21, 0.17056930775176021, 0.0, 0.051608685267359125},
     {OrbitKind::s21, 0.45929258829272316, 0.0, 0.047545817133642312},
     {OrbitKind::s21, 0.050547228317030975, 0.0, 0.01622924881159904},
     {OrbitKind::s111, 0.26311282963463811, 0.0083947774099576053, 0.013615157087217497}},
    // degree 9
    {{OrbitKind::centroid, 0.0, 0.0, 0.048567898141399417},
     {OrbitKind::s21, 0.18820353561903273, 0.0, 0.039823869463605127},
     {OrbitKind::s21, 0.48968251919873763, 0.0, 0.015667350113569535},
     {OrbitKind::s21, 0.04472951339445271, 0.0, 0.012788837829349016},
     {OrbitKind::s21, 0.43708959149293664, 0.0, 0.03891377050238714},
     {OrbitKind::s111, 0.74119859878449802, 0.2219629891607657, 0.021641769688644689}},
    // degree 10
    {{OrbitKind::centroid, 0.0, 0.0, 0.040871664573142983},
     {OrbitKind::s21, 0.14216110105656439, 0.0, 0.022978981802372364},
     {OrbitKind::s21, 0.032055373216943513, 0.0, 0.0066764844065747831},
     {OrbitKind::s111, 0.32181299528883542, 0.14813288578382055, 0.031952453198212023},
     {OrbitKind::s111, 0.1637017337371825, 0.80793060092287907, 0.012648878853644192},
     {OrbitKind::s111, 0.029619889488729768, 0.60123332868345925, 0.017092324081479714}},
    // degree 11
    {{OrbitKind::centroid, 0.0, 0.0, 0.039661171801814348},
     {OrbitKind::s21, 0.20272255638446431, 0.0, 0.010584558818693524},
     {OrbitKind::s21, 0.11660817599211172, 0.0, 0.01382467374927021},
     {OrbitKind::s21, 0.22134132932186535, 0.0, 0.022966609445400237},
     {OrbitKind::s21, 0.03127165041161052, 0.0, 0.0062969303877683654},
     {OrbitKind::s21, 0.4996128814295476, 0.0, 0.0056822644307157338},
     {OrbitKind::s21, 0.11356422528239184, 0.0, 0.006265421507518555},
     {OrbitKind::s111, 0.015969809057982886, 0.16108679905353136, 0.007836643257684858},
     {OrbitKind::s111, 0.31625738294130436, 0.63632615187641386, 0.02019020900001063},
     {OrbitKind::s111, 0.45839722355390707, 0.41374290956071819, 0.015886056605652141}},
    // degree 12
    {{OrbitKind::s21, 0.48821738977380488, 0.0, 0.012865533220227668},
     {OrbitKind::s21, 0.43972439229446027, 0.0, 0.021846272269019201},
     {OrbitKind::s21, 0.27121038501211592, 0.0, 0.03142911210894255},
     {OrbitKind::s21, 0.12757614554158592, 0.0, 0.017398056465354471},
     {OrbitKind::s21, 0.02131735045321037, 0.0, 0.0030831305257795086},
     {OrbitKind::s111, 0.27571326968551419, 0.60894323577978781, 0.020185778883190465},
     {OrbitKind::s111, 0.28132558098993955, 0.69583608678780342, 0.011178386601151723},
     {OrbitKind::s111, 0.11625191590759714, 0.85801403354407263, 0.0086581155543294462}}
};

// Legendre P_n and P_n' at x in [-1,1].
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

void append_orbit(const Orbit& o, QuadratureRule& r) {
    auto push = [&](double l1, double l2) {
        r.points.push_back({l1, l2});
        r.weights.push_back(o.w);
    };
    switch (o.kind) {
        case OrbitKind::centroid:
            push(1.0 / 3.0, 1.0 / 3.0);
            break;
        case OrbitKind::s21: {
            const double c = 1.0 - 2.0 * o.a;
            push(o.a, o.a);
            push(o.a, c);
            push(c, o.a);
            break;
        }
        case OrbitKind::s111: {
            const double l[3] = {o.a, o.b, 1.0 - o.a - o.b};
            const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
            for (const auto& p : perm) push(l[p[1]], l[p[2]]);
            break;
        }
    }
}

}  // namespace

double reference_measure(Shape shape) noexcept { return shape == Shape::interval ? 1.0 : 0.5; }

int shape_dim(Shape shape) noexcept { return shape == Shape::interval ? 1 : 2; }

QuadratureRule gauss_legendre(int n) {
    require(n >= 1, "gauss_legendre: need at least one point");
    QuadratureRule r;
    r.points.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const auto [p, dp] = legendre(n, x);
        (void)p;
        // ascending order on [0,1]
        r.points[i] = {0.5 * (1.0 - x), 0.0};
        r.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    r.exactness_degree = 2 * n - 1;
    return r;
}

QuadratureRule gauss_lobatto(int n) {
    require(n >= 2, "gauss_lobatto: need at least two points");
    const int N = n - 1;
    QuadratureRule r;
    r.points.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * i / N);
        if (i > 0 && i < N) {
            // Newton on (1 - x^2) P_N'(x), interior roots of P_N'
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= N; ++k) {
                    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                // x_new = x - (x P_N - P_{N-1}) / (n P_N)
                const double dx = (x * p1 - p0) / (n * p1);
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
        }
        const double pn = legendre(N, x).first;
        r.points[i] = {0.5 * (1.0 - x), 0.0};
        r.weights[i] = 1.0 / (N * (N + 1) * pn * pn);
    }
    r.points.front()[0] = 0.0;
    r.points.back()[0] = 1.0;
    r.exactness_degree = 2 * n - 3;
    return r;
}

QuadratureRule volume_quadrature(Shape shape, int exactness_degree) {
    const int d = std::max(exactness_degree, 1);
    if (shape == Shape::interval) {
        QuadratureRule r = gauss_legendre((d + 2) / 2);
        return r;
    }
    if (d > max_triangle_degree)
        throw Error("volume_quadrature: no triangle rule of degree " + std::to_string(exactness_degree) +
                    " (maximum " + std::to_string(max_triangle_degree) + ")");
    QuadratureRule r;
    for (const Orbit& o : kTriangleRules[static_cast<std::size_t>(d - 1)]) append_orbit(o, r);
    r.exactness_degree = d;
    return r;
}

double reference_monomial_integral(Shape shape, int a, int b) {
    if (shape == Shape::interval) return b == 0 ? 1.0 / (a + 1) : 0.0;
    return std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 3.0);
}

}  // namespace wavepp

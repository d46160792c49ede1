#ifndef SCHOTTKY_MOEBIUS_HPP_
#define SCHOTTKY_MOEBIUS_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gencircle.hpp"

namespace schottky {

  using Complex = std::complex<double>;

  // A point of the Riemann sphere as a pair [z0 : z1] up to scale.  Infinity
  // is [1 : 0]; nothing special is stored for it.
  class ProjectivePoint {
   public:
    ProjectivePoint() : ProjectivePoint(Complex(0), Complex(1)) {}
    ProjectivePoint(Complex z0, Complex z1) : _z0(z0), _z1(z1) {
      double n = std::max(std::abs(z0), std::abs(z1));
      if (n == 0 || !std::isfinite(n)) {
        throw std::invalid_argument("degenerate projective point");
      }
      _z0 /= n;
      _z1 /= n;
    }
    ProjectivePoint(Complex z)  // NOLINT(runtime/explicit)
        : ProjectivePoint(z, Complex(1)) {}

    static ProjectivePoint infinity() {
      return ProjectivePoint(Complex(1), Complex(0));
    }

    Complex z0() const noexcept {
      return _z0;
    }
    Complex z1() const noexcept {
      return _z1;
    }

    bool is_infinity(double eps = 1e-12) const noexcept {
      return std::abs(_z1) <= eps * std::abs(_z0);
    }

    // Only meaningful away from infinity.
    Complex affine() const {
      return _z0 / _z1;
    }

    // Chordal distance on the sphere, in [0, 1].
    friend double chordal_distance(ProjectivePoint const& p,
                                   ProjectivePoint const& q) {
      double num = std::abs(p._z0 * q._z1 - p._z1 * q._z0);
      double den = std::hypot(std::abs(p._z0), std::abs(p._z1))
                   * std::hypot(std::abs(q._z0), std::abs(q._z1));
      return num / den;
    }

   private:
    Complex _z0;
    Complex _z1;
  };

  enum class Orientation { preserving, reversing };

  inline Orientation operator^(Orientation a, Orientation b) {
    return a == b ? Orientation::preserving : Orientation::reversing;
  }

  // 2x2 complex matrix [[a, b], [c, d]] in row-major order.
  using Mat2 = std::array<Complex, 4>;

  namespace detail {
    inline Mat2 mul(Mat2 const& x, Mat2 const& y) {
      return {x[0] * y[0] + x[1] * y[2],
              x[0] * y[1] + x[1] * y[3],
              x[2] * y[0] + x[3] * y[2],
              x[2] * y[1] + x[3] * y[3]};
    }
    inline Mat2 conj(Mat2 const& x) {
      return {std::conj(x[0]), std::conj(x[1]), std::conj(x[2]),
              std::conj(x[3])};
    }
    inline Complex det(Mat2 const& x) {
      return x[0] * x[3] - x[1] * x[2];
    }
    inline double max_abs_diff(Mat2 const& x, Mat2 const& y, Complex s) {
      double r = 0;
      for (size_t i = 0; i < 4; ++i) {
        r = std::max(r, std::abs(x[i] - s * y[i]));
      }
      return r;
    }
  }  // namespace detail

  // z -> (az + b)/(cz + d) if preserving, (a conj(z) + b)/(c conj(z) + d) if
  // reversing.  The stored matrix always has determinant 1, so it is defined
  // up to sign.
  class MoebiusMap {
   public:
    MoebiusMap() : MoebiusMap(Complex(1), Complex(0), Complex(0), Complex(1)) {}

    MoebiusMap(Complex a,
               Complex b,
               Complex c,
               Complex d,
               Orientation o = Orientation::preserving)
        : _m{a, b, c, d}, _orientation(o) {
      normalize();
    }

    MoebiusMap(Mat2 const& m, Orientation o) : _m(m), _orientation(o) {
      normalize();
    }

    static MoebiusMap identity() {
      return MoebiusMap();
    }
    static MoebiusMap conjugation() {
      return MoebiusMap(1, 0, 0, 1, Orientation::reversing);
    }
    static MoebiusMap translation(Complex t) {
      return MoebiusMap(1, t, 0, 1);
    }
    static MoebiusMap scaling(Complex k) {
      return MoebiusMap(k, 0, 0, 1);
    }

    Mat2 const& matrix() const noexcept {
      return _m;
    }
    Complex a() const noexcept {
      return _m[0];
    }
    Complex b() const noexcept {
      return _m[1];
    }
    Complex c() const noexcept {
      return _m[2];
    }
    Complex d() const noexcept {
      return _m[3];
    }
    Orientation orientation() const noexcept {
      return _orientation;
    }
    bool is_reversing() const noexcept {
      return _orientation == Orientation::reversing;
    }
    Complex trace() const noexcept {
      return _m[0] + _m[3];
    }

    ProjectivePoint apply(ProjectivePoint const& p) const {
      Complex z0 = p.z0(), z1 = p.z1();
      if (is_reversing()) {
        z0 = std::conj(z0);
        z1 = std::conj(z1);
      }
      return ProjectivePoint(_m[0] * z0 + _m[1] * z1, _m[2] * z0 + _m[3] * z1);
    }

    // Convenience for finite points with finite images.
    Complex operator()(Complex z) const {
      return apply(ProjectivePoint(z)).affine();
    }

    MoebiusMap inverse() const {
      Mat2 adj{_m[3], -_m[1], -_m[2], _m[0]};
      if (is_reversing()) {
        adj = detail::conj(adj);
      }
      return MoebiusMap(adj, _orientation);
    }

    // Largest entrywise deviation between the two matrices, minimised over
    // the sign ambiguity.  Infinite if orientations differ.
    friend double deviation(MoebiusMap const& f, MoebiusMap const& g) {
      if (f._orientation != g._orientation) {
        return std::numeric_limits<double>::infinity();
      }
      return std::min(detail::max_abs_diff(f._m, g._m, 1),
                      detail::max_abs_diff(f._m, g._m, -1));
    }

    bool approx_equal(MoebiusMap const& g, double eps = 1e-9) const {
      return deviation(*this, g) <= eps;
    }

   private:
    void normalize() {
      Complex dt = detail::det(_m);
      if (std::abs(dt) == 0 || !std::isfinite(std::abs(dt))) {
        throw std::invalid_argument("singular Moebius matrix");
      }
      Complex s = std::sqrt(dt);
      for (auto& x : _m) {
        x /= s;
      }
      // Fix the sign so that equal maps tend to have equal matrices.
      for (auto const& x : _m) {
        if (std::abs(x) > 1e-14) {
          if (x.real() < 0 || (x.real() == 0 && x.imag() < 0)) {
            for (auto& y : _m) {
              y = -y;
            }
          }
          break;
        }
      }
    }

    Mat2        _m;
    Orientation _orientation;
  };

  // f o g
  inline MoebiusMap compose(MoebiusMap const& f, MoebiusMap const& g) {
    Mat2 right = f.is_reversing() ? detail::conj(g.matrix()) : g.matrix();
    return MoebiusMap(detail::mul(f.matrix(), right),
                      f.orientation() ^ g.orientation());
  }

  inline MoebiusMap operator*(MoebiusMap const& f, MoebiusMap const& g) {
    return compose(f, g);
  }

  // f1 o f2 o ... o fk
  inline MoebiusMap compose(std::initializer_list<MoebiusMap> fs) {
    MoebiusMap r;
    for (auto const& f : fs) {
      r = compose(r, f);
    }
    return r;
  }

  inline MoebiusMap conjugate_by(MoebiusMap const& h, MoebiusMap const& f) {
    return compose(compose(h, f), h.inverse());
  }

  inline MoebiusMap power(MoebiusMap const& f, int k) {
    MoebiusMap base = k < 0 ? f.inverse() : f;
    MoebiusMap r;
    for (int i = 0; i < std::abs(k); ++i) {
      r = compose(r, base);
    }
    return r;
  }

  struct TransformClass {
    enum class Kind {
      identity,
      parabolic,
      elliptic,
      loxodromic,
      pseudo_parabolic,
      glide_reflection,
      pseudo_elliptic,
      reflection,
      imaginary_reflection
    };

    Kind kind = Kind::identity;
    // Elliptic only: the order, or 0 if infinite or not detected.
    int order = 0;

    bool operator==(TransformClass const&) const = default;

    bool is_reversing_kind() const noexcept {
      return kind >= Kind::pseudo_parabolic;
    }
  };

  inline std::string to_string(TransformClass::Kind k) {
    using K = TransformClass::Kind;
    switch (k) {
      case K::identity:
        return "identity";
      case K::parabolic:
        return "parabolic";
      case K::elliptic:
        return "elliptic";
      case K::loxodromic:
        return "loxodromic";
      case K::pseudo_parabolic:
        return "pseudo-parabolic";
      case K::glide_reflection:
        return "glide-reflection";
      case K::pseudo_elliptic:
        return "pseudo-elliptic";
      case K::reflection:
        return "reflection";
      case K::imaginary_reflection:
        return "imaginary-reflection";
    }
    return "?";
  }

  inline std::string to_string(TransformClass const& c) {
    std::string s = to_string(c.kind);
    if (c.kind == TransformClass::Kind::elliptic) {
      s += "(" + (c.order == 0 ? std::string("inf") : std::to_string(c.order))
           + ")";
    }
    return s;
  }

  namespace detail {

    // Returns true if x is within eps of 0, false if it is further than the
    // band, and throws in between.
    inline bool near_zero(double x, Tolerance tol, char const* what) {
      x = std::abs(x);
      if (x <= tol.eps) {
        return true;
      }
      if (x <= tol.band()) {
        throw NumericallyAmbiguous(std::string(what)
                                   + " inside the tolerance band");
      }
      return false;
    }

    inline double dist_to_scalar(Mat2 const& m, Complex s) {
      return std::max({std::abs(m[0] - s),
                       std::abs(m[1]),
                       std::abs(m[2]),
                       std::abs(m[3] - s)});
    }

    inline TransformClass classify_preserving(Mat2 const& m, Tolerance tol) {
      using K = TransformClass::Kind;
      double to_id = std::min(dist_to_scalar(m, 1), dist_to_scalar(m, -1));
      if (near_zero(to_id, tol, "distance to the identity")) {
        return {K::identity, 0};
      }
      Complex tr  = m[0] + m[3];
      Complex tr2 = tr * tr;
      if (near_zero(std::abs(tr2 - 4.0), tol, "|tr^2 - 4|")) {
        return {K::parabolic, 0};
      }
      bool real = near_zero(tr2.imag(), tol, "Im tr^2");
      if (real && tr2.real() >= 0 && tr2.real() < 4) {
        // tr^2 = 4 cos^2(theta/2) = 2 + 2 cos(theta)
        double c = tr2.real() / 2 - 1;
        for (int n = 2; n <= 64; ++n) {
          for (int k = 1; 2 * k <= n; ++k) {
            if (std::gcd(k, n) != 1) {
              continue;
            }
            double ck = std::cos(2 * std::numbers::pi * k / n);
            if (std::abs(c - ck) <= tol.eps) {
              return {K::elliptic, n};
            }
          }
        }
        return {K::elliptic, 0};
      }
      return {K::loxodromic, 0};
    }

  }  // namespace detail

  inline TransformClass classify(MoebiusMap const& f, Tolerance tol = {}) {
    using K = TransformClass::Kind;
    if (!f.is_reversing()) {
      return detail::classify_preserving(f.matrix(), tol);
    }
    Mat2   sq    = detail::mul(f.matrix(), detail::conj(f.matrix()));
    double to_p  = detail::dist_to_scalar(sq, 1);
    double to_m  = detail::dist_to_scalar(sq, -1);
    if (detail::near_zero(to_p, tol, "|M conj(M) - I|")) {
      return {K::reflection, 0};
    }
    if (detail::near_zero(to_m, tol, "|M conj(M) + I|")) {
      return {K::imaginary_reflection, 0};
    }
    TransformClass s = detail::classify_preserving(sq, tol);
    switch (s.kind) {
      case K::parabolic:
        return {K::pseudo_parabolic, 0};
      case K::elliptic:
        return {K::pseudo_elliptic, 0};
      default:
        return {K::glide_reflection, 0};
    }
  }

  // Either a finite set of points (possibly empty) or a circle of fixed
  // points.
  struct FixedPointSet {
    std::vector<ProjectivePoint> points;
    std::optional<GenCircle>     circle;
  };

  namespace detail {

    inline std::vector<ProjectivePoint> eigenpoints(Mat2 const& m,
                                                    Tolerance   tol) {
      TransformClass cls = classify_preserving(m, tol);
      if (cls.kind == TransformClass::Kind::identity) {
        throw PreconditionViolation("fixed points of the identity");
      }
      Complex tr   = m[0] + m[3];
      Complex disc = std::sqrt(tr * tr - 4.0);
      std::vector<Complex> lambdas;
      if (cls.kind == TransformClass::Kind::parabolic) {
        lambdas = {tr / 2.0};
      } else {
        lambdas = {(tr + disc) / 2.0, (tr - disc) / 2.0};
      }
      std::vector<ProjectivePoint> out;
      for (Complex l : lambdas) {
        // Rows of (M - l I) annihilate the eigenvector.
        Complex v0 = m[1], v1 = l - m[0];
        Complex w0 = l - m[3], w1 = m[2];
        if (std::norm(v0) + std::norm(v1) >= std::norm(w0) + std::norm(w1)) {
          out.emplace_back(v0, v1);
        } else {
          out.emplace_back(w0, w1);
        }
      }
      return out;
    }

    inline GenCircle reflection_circle(Mat2 const& m, Tolerance tol) {
      // Fixed set: c|z|^2 + d z - a conj(z) - b = 0.  Multiply by a scalar
      // making it Hermitian.
      Complex a = m[0], b = m[1], c = m[2], d = m[3];
      Complex lambda;
      if (std::abs(c) >= std::abs(b) && std::abs(c) >= std::abs(d)) {
        lambda = std::conj(c) / std::abs(c);
      } else if (std::abs(b) >= std::abs(d)) {
        lambda = -std::conj(b) / std::abs(b);
      } else {
        lambda = std::sqrt(-std::conj(a) / d);
        lambda /= std::abs(lambda);
      }
      HermitianForm h;
      h.A = (lambda * c).real();
      h.C = (-lambda * b).real();
      h.B = (-lambda * a + std::conj(lambda * d)) / 2.0;
      return GenCircle::from_form(h, tol);
    }

  }  // namespace detail

  inline FixedPointSet fixed_points(MoebiusMap const& f, Tolerance tol = {}) {
    using K            = TransformClass::Kind;
    TransformClass cls = classify(f, tol);
    if (cls.kind == K::identity) {
      throw PreconditionViolation("fixed points of the identity");
    }
    if (!f.is_reversing()) {
      return {detail::eigenpoints(f.matrix(), tol), std::nullopt};
    }
    if (cls.kind == K::reflection) {
      return {{}, detail::reflection_circle(f.matrix(), tol)};
    }
    if (cls.kind == K::imaginary_reflection) {
      return {};
    }
    Mat2 sq = detail::mul(f.matrix(), detail::conj(f.matrix()));
    return {detail::eigenpoints(sq, tol), std::nullopt};
  }

}  // namespace schottky

#endif  // SCHOTTKY_MOEBIUS_HPP_

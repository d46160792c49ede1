#ifndef SCHOTTKY_GENCIRCLE_HPP_
#define SCHOTTKY_GENCIRCLE_HPP_

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "errors.hpp"

namespace schottky {

  using Complex = std::complex<double>;

  // Coefficients of the Hermitian form  A|z|^2 + B conj(z) + conj(B) z + C
  // whose zero set is a circle or line.  A and C are real.
  struct HermitianForm {
    double  A = 0;
    Complex B = 0;
    double  C = 0;

    // -det of the form; positive for real circles.  Equals (Ar)^2 for a
    // circle of radius r and |B|^2 for a line.
    double discriminant() const noexcept {
      return std::norm(B) - A * C;
    }

    HermitianForm scaled(double s) const noexcept {
      return {A * s, B * s, C * s};
    }

    // Scaled to discriminant 1.
    HermitianForm normalized() const {
      double d = discriminant();
      if (!(d > 0)) {
        throw std::invalid_argument("Hermitian form is not a real circle");
      }
      return scaled(1 / std::sqrt(d));
    }

    // Value at the projective point [z0 : z1].
    double value(Complex z0, Complex z1) const noexcept {
      return A * std::norm(z0) + 2 * (std::conj(z0) * B * z1).real()
             + C * std::norm(z1);
    }
  };

  // (2 Re(B1 conj(B2)) - A1 C2 - A2 C1) / 2 on normalized forms.  For two
  // circles this is (r1^2 + r2^2 - d^2) / (2 r1 r2); it is the cosine of the
  // intersection angle when they meet and below -1 when they are disjoint
  // and unnested.  Flipping the sign of either form flips its sign.
  inline double inversive_product(HermitianForm const& h1,
                                  HermitianForm const& h2) {
    auto a = h1.normalized();
    auto b = h2.normalized();
    return (2 * (a.B * std::conj(b.B)).real() - a.A * b.C - b.A * a.C) / 2;
  }

  class GenCircle {
   public:
    // A circle.
    static GenCircle circle(Complex center, double radius) {
      if (!(radius > 0) || !std::isfinite(radius)) {
        throw std::invalid_argument("circle radius must be positive");
      }
      GenCircle c;
      c._line   = false;
      c._center = center;
      c._radius = radius;
      return c;
    }

    // The line {z : Re(z conj(n)) = offset} with |n| = 1.
    static GenCircle line(Complex normal, double offset) {
      double n = std::abs(normal);
      if (!(n > 0)) {
        throw std::invalid_argument("line normal must be non-zero");
      }
      GenCircle c;
      c._line   = true;
      c._normal = normal / n;
      c._offset = offset / n;
      return c;
    }

    static GenCircle line_through(Complex p, Complex q) {
      Complex dir = q - p;
      Complex n   = Complex(0, 1) * dir / std::abs(dir);
      return line(n, (p * std::conj(n)).real());
    }

    static GenCircle real_axis() {
      return line(Complex(0, 1), 0);
    }

    static GenCircle from_form(HermitianForm const& h, Tolerance tol = {}) {
      double d = h.discriminant();
      if (!(d > 0)) {
        throw std::invalid_argument("Hermitian form is not a real circle");
      }
      auto n = h.normalized();
      // n.A is 1/radius for circles.
      double a = std::abs(n.A);
      if (a <= tol.eps) {
        return line(n.B / std::abs(n.B), -n.C / (2 * std::abs(n.B)));
      }
      if (a <= tol.band()) {
        throw NumericallyAmbiguous(
            "circle image is within tolerance of a line");
      }
      Complex p = -n.B / n.A;
      double  r = 1 / a;
      return circle(p, r);
    }

    bool is_line() const noexcept {
      return _line;
    }
    Complex center() const noexcept {
      return _center;
    }
    double radius() const noexcept {
      return _radius;
    }
    Complex normal() const noexcept {
      return _normal;
    }
    double offset() const noexcept {
      return _offset;
    }

    // Circles have A = 1 (negative inside), lines have A = 0 (positive on
    // the side the normal points to).
    HermitianForm form() const noexcept {
      if (_line) {
        return {0, _normal, -2 * _offset};
      }
      return {1, -_center, std::norm(_center) - _radius * _radius};
    }

    // Same point set, within eps in normalized form coefficients.
    bool approx_equal(GenCircle const& o, double eps = 1e-9) const {
      auto   a = form().normalized();
      auto   b = o.form().normalized();
      double s = std::max({std::abs(a.A), std::abs(a.B), std::abs(a.C), 1.0});
      auto   diff
          = [&](double sign) {
              return std::max({std::abs(a.A - sign * b.A),
                               std::abs(a.B - sign * b.B),
                               std::abs(a.C - sign * b.C)})
                     / s;
            };
      return std::min(diff(1), diff(-1)) <= eps;
    }

    // Distance-like residual of a finite point from the circle.
    double residual(Complex z) const {
      if (_line) {
        return std::abs((z * std::conj(_normal)).real() - _offset);
      }
      return std::abs(std::abs(z - _center) - _radius);
    }

    std::string to_string() const {
      char buf[160];
      if (_line) {
        std::snprintf(buf,
                      sizeof(buf),
                      "line(normal=%.12g%+.12gi, offset=%.12g)",
                      _normal.real(),
                      _normal.imag(),
                      _offset);
      } else {
        std::snprintf(buf,
                      sizeof(buf),
                      "circle(center=%.12g%+.12gi, radius=%.12g)",
                      _center.real(),
                      _center.imag(),
                      _radius);
      }
      return buf;
    }

   private:
    GenCircle() = default;

    bool    _line   = false;
    Complex _center = 0;
    double  _radius = 1;
    Complex _normal = Complex(0, 1);
    double  _offset = 0;
  };

}  // namespace schottky

#endif  // SCHOTTKY_GENCIRCLE_HPP_

#ifndef COLLAPSE_CYCLOTOMIC_HPP_
#define COLLAPSE_CYCLOTOMIC_HPP_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"

namespace collapse {

  //! Euler's totient.
  inline std::uint32_t euler_phi(std::uint32_t m) {
    std::uint32_t result = m;
    for (std::uint32_t p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        while (m % p == 0) {
          m /= p;
        }
        result -= result / p;
      }
    }
    if (m > 1) {
      result -= result / m;
    }
    return result;
  }

  inline std::vector<std::uint32_t> prime_divisors(std::uint32_t m) {
    std::vector<std::uint32_t> result;
    for (std::uint32_t p = 2; p * p <= m; ++p) {
      if (m % p == 0) {
        result.push_back(p);
        while (m % p == 0) {
          m /= p;
        }
      }
    }
    if (m > 1) {
      result.push_back(m);
    }
    return result;
  }

  //! Coefficients of the m-th cyclotomic polynomial, lowest degree first.
  //! Results are cached process-wide.
  inline std::shared_ptr<std::vector<long long> const>
  cyclotomic_polynomial(std::uint32_t m) {
    static std::mutex mtx;
    static std::map<std::uint32_t, std::shared_ptr<std::vector<long long> const>>
        cache;
    {
      std::lock_guard<std::mutex> lock(mtx);
      if (auto it = cache.find(m); it != cache.end()) {
        return it->second;
      }
    }
    if (m == 0) {
      throw InputError("conductor must be positive");
    }
    // x^m - 1 divided by Phi_d for every proper divisor d.
    std::vector<long long> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (std::uint32_t d = 1; d < m; ++d) {
      if (m % d != 0) {
        continue;
      }
      auto const& den = *cyclotomic_polynomial(d);
      std::size_t const dd = den.size() - 1;
      std::vector<long long> quot(num.size() - dd, 0);
      for (std::size_t k = num.size(); k-- > dd;) {
        long long c = num[k];  // den is monic
        quot[k - dd] = c;
        if (c != 0) {
          for (std::size_t j = 0; j <= dd; ++j) {
            num[k - dd + j] -= c * den[j];
          }
        }
      }
      num = std::move(quot);
    }
    auto result = std::make_shared<std::vector<long long> const>(std::move(num));
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(m, std::move(result)).first->second;
  }

  //! A root of unity exp(2 pi i k / n) kept in lowest terms, so equal values
  //! have equal representations.
  class RootOfUnity {
   public:
    constexpr RootOfUnity() = default;

    RootOfUnity(std::uint32_t order, long long exponent) {
      if (order == 0) {
        throw InputError("root of unity needs a positive order");
      }
      long long e = exponent % static_cast<long long>(order);
      if (e < 0) {
        e += order;
      }
      auto g = std::gcd(static_cast<std::uint64_t>(e), std::uint64_t{order});
      order_ = static_cast<std::uint32_t>(order / g);
      exponent_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(e) / g);
    }

    static RootOfUnity minus_one() {
      return RootOfUnity(2, 1);
    }

    std::uint32_t order() const noexcept {
      return order_;
    }
    std::uint32_t exponent() const noexcept {
      return exponent_;
    }
    bool is_one() const noexcept {
      return order_ == 1;
    }

    RootOfUnity inverse() const {
      return RootOfUnity(order_, -static_cast<long long>(exponent_));
    }

    friend RootOfUnity operator*(RootOfUnity a, RootOfUnity b) {
      std::uint64_t l = std::lcm(std::uint64_t{a.order_}, std::uint64_t{b.order_});
      std::uint64_t e = std::uint64_t{a.exponent_} * (l / a.order_)
                        + std::uint64_t{b.exponent_} * (l / b.order_);
      return RootOfUnity(static_cast<std::uint32_t>(l),
                         static_cast<long long>(e % l));
    }

    friend bool operator==(RootOfUnity, RootOfUnity) = default;

   private:
    std::uint32_t order_ = 1;
    std::uint32_t exponent_ = 0;
  };

  //! GAP-style text: "1", "-1", "E(n)", "E(n)^k".
  inline std::string to_string(RootOfUnity r) {
    if (r.order() == 1) {
      return "1";
    }
    if (r.order() == 2) {
      return "-1";
    }
    std::string s = "E(" + std::to_string(r.order()) + ")";
    if (r.exponent() != 1) {
      s += "^" + std::to_string(r.exponent());
    }
    return s;
  }

  //! An element of the cyclotomic field Q(zeta_m), stored as rational
  //! coefficients of 1, zeta_m, ..., zeta_m^(phi(m)-1).
  //!
  //! The conductor is never shrunk; binary operations lift both operands to
  //! the lcm of their conductors.
  class Cyclotomic {
   public:
    Cyclotomic() : conductor_(1), coeffs_(1) {}

    Cyclotomic(long v)  // NOLINT(runtime/explicit)
        : conductor_(1), coeffs_{mpq_class(v)} {}

    Cyclotomic(mpq_class v)  // NOLINT(runtime/explicit)
        : conductor_(1), coeffs_{std::move(v)} {
      coeffs_[0].canonicalize();
    }

    //! Reduces an arbitrary polynomial in zeta_m modulo Phi_m.
    static Cyclotomic from_polynomial(std::uint32_t m,
                                      std::vector<mpq_class> poly) {
      if (m == 0) {
        throw InputError("conductor must be positive");
      }
      Cyclotomic c;
      c.conductor_ = m;
      c.coeffs_ = reduce(m, std::move(poly));
      return c;
    }

    //! zeta_m^k.
    static Cyclotomic zeta(std::uint32_t m, long long k = 1) {
      if (m == 0) {
        throw InputError("conductor must be positive");
      }
      long long e = k % static_cast<long long>(m);
      if (e < 0) {
        e += m;
      }
      std::vector<mpq_class> poly(static_cast<std::size_t>(e) + 1);
      poly[static_cast<std::size_t>(e)] = 1;
      return from_polynomial(m, std::move(poly));
    }

    static Cyclotomic from_root(RootOfUnity r) {
      return zeta(r.order(), r.exponent());
    }

    std::uint32_t conductor() const noexcept {
      return conductor_;
    }
    std::vector<mpq_class> const& coefficients() const noexcept {
      return coeffs_;
    }

    bool is_zero() const {
      for (auto const& c : coeffs_) {
        if (sgn(c) != 0) {
          return false;
        }
      }
      return true;
    }

    bool is_rational() const {
      for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) != 0) {
          return false;
        }
      }
      return true;
    }

    //! Embeds into Q(zeta_L); requires conductor() | L.
    Cyclotomic lift(std::uint32_t L) const {
      if (L % conductor_ != 0) {
        throw InputError("cannot lift conductor " + std::to_string(conductor_)
                         + " to " + std::to_string(L));
      }
      if (L == conductor_) {
        return *this;
      }
      std::uint32_t const step = L / conductor_;
      std::vector<mpq_class> poly((coeffs_.size() - 1) * step + 1);
      for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        poly[i * step] = coeffs_[i];
      }
      return from_polynomial(L, std::move(poly));
    }

    Cyclotomic operator-() const {
      Cyclotomic r = *this;
      for (auto& c : r.coeffs_) {
        c = -c;
      }
      return r;
    }

    friend Cyclotomic operator+(Cyclotomic const& a, Cyclotomic const& b) {
      if (a.conductor_ != b.conductor_) {
        std::uint32_t L = std::lcm(a.conductor_, b.conductor_);
        return a.lift(L) + b.lift(L);
      }
      Cyclotomic r = a;
      for (std::size_t i = 0; i < r.coeffs_.size(); ++i) {
        r.coeffs_[i] += b.coeffs_[i];
      }
      return r;
    }

    friend Cyclotomic operator-(Cyclotomic const& a, Cyclotomic const& b) {
      return a + (-b);
    }

    friend Cyclotomic operator*(Cyclotomic const& a, Cyclotomic const& b) {
      if (a.conductor_ != b.conductor_) {
        std::uint32_t L = std::lcm(a.conductor_, b.conductor_);
        return a.lift(L) * b.lift(L);
      }
      if (a.coeffs_.size() == 1) {
        Cyclotomic r = b;
        for (auto& c : r.coeffs_) {
          c *= a.coeffs_[0];
        }
        return r;
      }
      std::vector<mpq_class> poly(a.coeffs_.size() + b.coeffs_.size() - 1);
      for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (sgn(a.coeffs_[i]) == 0) {
          continue;
        }
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
          poly[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
      }
      return from_polynomial(a.conductor_, std::move(poly));
    }

    Cyclotomic& operator+=(Cyclotomic const& o) {
      return *this = *this + o;
    }
    Cyclotomic& operator*=(Cyclotomic const& o) {
      return *this = *this * o;
    }

    //! Exact inverse; throws InputError on zero.
    Cyclotomic inverse() const {
      if (is_zero()) {
        throw InputError("division by zero cyclotomic");
      }
      std::size_t const d = coeffs_.size();
      if (d == 1) {
        return Cyclotomic::from_polynomial(conductor_, {1 / coeffs_[0]});
      }
      // Solve (multiplication by *this) x = 1 in the power basis.
      std::vector<std::vector<mpq_class>> a(d, std::vector<mpq_class>(d + 1));
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<mpq_class> basis(j + 1);
        basis[j] = 1;
        Cyclotomic col = *this * from_polynomial(conductor_, std::move(basis));
        for (std::size_t i = 0; i < d; ++i) {
          a[i][j] = col.coeffs_[i];
        }
      }
      a[0][d] = 1;
      for (std::size_t c = 0; c < d; ++c) {
        std::size_t p = c;
        while (p < d && sgn(a[p][c]) == 0) {
          ++p;
        }
        if (p == d) {
          detail::invariant_failure("singular multiplication map");
        }
        std::swap(a[p], a[c]);
        mpq_class inv = 1 / a[c][c];
        for (std::size_t j = c; j <= d; ++j) {
          a[c][j] *= inv;
        }
        for (std::size_t i = 0; i < d; ++i) {
          if (i == c || sgn(a[i][c]) == 0) {
            continue;
          }
          mpq_class f = a[i][c];
          for (std::size_t j = c; j <= d; ++j) {
            a[i][j] -= f * a[c][j];
          }
        }
      }
      std::vector<mpq_class> x(d);
      for (std::size_t i = 0; i < d; ++i) {
        x[i] = a[i][d];
      }
      return from_polynomial(conductor_, std::move(x));
    }

    friend Cyclotomic operator/(Cyclotomic const& a, Cyclotomic const& b) {
      return a * b.inverse();
    }

    friend bool operator==(Cyclotomic const& a, Cyclotomic const& b) {
      if (a.conductor_ != b.conductor_) {
        std::uint32_t L = std::lcm(a.conductor_, b.conductor_);
        return a.lift(L).coeffs_ == b.lift(L).coeffs_;
      }
      return a.coeffs_ == b.coeffs_;
    }

   private:
    static std::vector<mpq_class> reduce(std::uint32_t m,
                                         std::vector<mpq_class> poly) {
      std::size_t const d = euler_phi(m);
      if (poly.size() > d) {
        auto phi = cyclotomic_polynomial(m);
        for (std::size_t k = poly.size(); k-- > d;) {
          if (sgn(poly[k]) == 0) {
            continue;
          }
          mpq_class c = poly[k];
          for (std::size_t j = 0; j <= d; ++j) {
            if ((*phi)[j] != 0) {
              poly[k - d + j] -= c * mpq_class(static_cast<long>((*phi)[j]));
            }
          }
        }
      }
      poly.resize(d);
      for (auto& c : poly) {
        c.canonicalize();
      }
      return poly;
    }

    std::uint32_t conductor_;
    std::vector<mpq_class> coeffs_;
  };

  inline Cyclotomic to_cyclotomic(RootOfUnity r) {
    return Cyclotomic::from_root(r);
  }

  //! Recognizes a cyclotomic number that is a root of unity; returns false
  //! otherwise. Only orders dividing 2 * conductor can occur.
  inline bool as_root_of_unity(Cyclotomic const& c, RootOfUnity& out) {
    std::uint32_t const n = std::lcm(2u, c.conductor());
    for (std::uint32_t k = 0; k < n; ++k) {
      if (Cyclotomic::zeta(n, k) == c) {
        out = RootOfUnity(n, k);
        return true;
      }
    }
    return false;
  }

  //! "c0 + c1*E(m) + ..." in GAP notation; roots of unity print compactly.
  inline std::string to_string(Cyclotomic const& c) {
    RootOfUnity r;
    if (as_root_of_unity(c, r)) {
      return to_string(r);
    }
    if (c.is_rational()) {
      return c.coefficients()[0].get_str();
    }
    std::string out;
    auto const& k = c.coefficients();
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (sgn(k[i]) == 0) {
        continue;
      }
      std::string coef = k[i].get_str();
      if (!out.empty()) {
        out += sgn(k[i]) > 0 ? "+" : "";
      }
      if (i == 0) {
        out += coef;
        continue;
      }
      if (k[i] == 1) {
        coef = "";
      } else if (k[i] == -1) {
        coef = "-";
      } else {
        coef += "*";
      }
      out += coef + "E(" + std::to_string(c.conductor()) + ")";
      if (i > 1) {
        out += "^" + std::to_string(i);
      }
    }
    return out;
  }

  inline std::ostream& operator<<(std::ostream& os, Cyclotomic const& c) {
    return os << to_string(c);
  }

  inline std::ostream& operator<<(std::ostream& os, RootOfUnity r) {
    return os << to_string(r);
  }

  //! Parses "1", "-3/4", "E(5)", "E(5)^3", "-E(4)" and products/sums of
  //! such terms joined by '+' or '-' (no parentheses).
  inline Cyclotomic parse_cyclotomic(std::string_view text) {
    std::string s;
    for (char ch : text) {
      if (ch != ' ' && ch != '\t') {
        s += ch;
      }
    }
    if (s.empty()) {
      throw InputError("empty scalar literal");
    }
    std::size_t pos = 0;
    auto read_int = [&]() -> long long {
      std::size_t start = pos;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
        ++pos;
      }
      if (start == pos || pos - start > 15) {
        throw InputError("bad number in scalar literal '" + s + "'");
      }
      return std::stoll(s.substr(start, pos - start));
    };
    auto read_factor = [&]() -> Cyclotomic {
      if (s.compare(pos, 2, "E(") == 0) {
        pos += 2;
        long long m = read_int();
        if (pos >= s.size() || s[pos] != ')' || m <= 0) {
          throw InputError("bad E(m) in scalar literal '" + s + "'");
        }
        ++pos;
        long long k = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          bool neg = pos < s.size() && s[pos] == '-';
          if (neg) {
            ++pos;
          }
          k = read_int();
          if (neg) {
            k = -k;
          }
        }
        return Cyclotomic::zeta(static_cast<std::uint32_t>(m), k);
      }
      long long num = read_int();
      long long den = 1;
      if (pos < s.size() && s[pos] == '/') {
        ++pos;
        den = read_int();
        if (den == 0) {
          throw InputError("zero denominator in scalar literal '" + s + "'");
        }
      }
      mpq_class q(static_cast<long>(num), static_cast<long>(den));
      q.canonicalize();
      return Cyclotomic(q);
    };
    Cyclotomic total;
    while (pos < s.size()) {
      bool neg = false;
      if (s[pos] == '+' || s[pos] == '-') {
        neg = s[pos] == '-';
        ++pos;
      }
      if (pos >= s.size()) {
        throw InputError("dangling sign in scalar literal '" + s + "'");
      }
      Cyclotomic term = read_factor();
      while (pos < s.size() && s[pos] == '*') {
        ++pos;
        term = term * read_factor();
      }
      total = neg ? total - term : total + term;
      if (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
        throw InputError("unexpected character in scalar literal '" + s + "'");
      }
    }
    return total;
  }

}  // namespace collapse

#endif  // COLLAPSE_CYCLOTOMIC_HPP_

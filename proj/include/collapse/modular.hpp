#ifndef COLLAPSE_MODULAR_HPP_
#define COLLAPSE_MODULAR_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cyclotomic.hpp"
#include "error.hpp"

namespace collapse {

  inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return (a * b) % p;  // a, b < 2^31
  }

  inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e > 0) {
      if (e & 1) {
        r = mul_mod(r, a, p);
      }
      a = mul_mod(a, a, p);
      e >>= 1;
    }
    return r;
  }

  inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
    return pow_mod(a, p - 2, p);
  }

  inline bool is_prime_u32(std::uint64_t n) {
    if (n < 2) {
      return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) {
        return false;
      }
    }
    return true;
  }

  //! Reduction Z[1/den][zeta_M] -> F_p, zeta_M -> w, for a prime p = 1 mod M.
  struct PrimeField {
    std::uint32_t p = 0;
    std::uint32_t conductor = 1;
    std::uint32_t root = 1;  // primitive conductor-th root of unity mod p

    //! Empty if some denominator vanishes mod p.
    std::optional<std::uint32_t> reduce(Cyclotomic const& c) const {
      std::uint32_t const m = c.conductor();
      if (conductor % m != 0) {
        throw InputError("value conductor does not divide the field conductor");
      }
      std::uint64_t const wm = pow_mod(root, conductor / m, p);
      std::uint64_t acc = 0;
      std::uint64_t w = 1;
      for (mpq_class const& q : c.coefficients()) {
        std::uint64_t const num = mpz_fdiv_ui(q.get_num_mpz_t(), p);
        std::uint64_t const den = mpz_fdiv_ui(q.get_den_mpz_t(), p);
        if (den == 0) {
          return std::nullopt;
        }
        acc = (acc + mul_mod(mul_mod(num, inv_mod(den, p), p), w, p)) % p;
        w = mul_mod(w, wm, p);
      }
      return static_cast<std::uint32_t>(acc);
    }
  };

  namespace detail {
    inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
      std::vector<std::uint64_t> out;
      for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
          out.push_back(d);
          while (n % d == 0) {
            n /= d;
          }
        }
      }
      if (n > 1) {
        out.push_back(n);
      }
      return out;
    }

    inline std::uint32_t primitive_root_of_order(std::uint32_t p,
                                                 std::uint32_t m) {
      auto const fac = prime_factors(p - 1);
      for (std::uint64_t g = 2; g < p; ++g) {
        bool ok = true;
        for (auto q : fac) {
          if (pow_mod(g, (p - 1) / q, p) == 1) {
            ok = false;
            break;
          }
        }
        if (ok) {
          return static_cast<std::uint32_t>(pow_mod(g, (p - 1) / m, p));
        }
      }
      detail::invariant_failure("no generator mod p");
      return 0;
    }
  }  // namespace detail

  //! The `count` largest primes p < 2^31 with p = 1 mod `conductor` for
  //! which every value in `values` reduces (no denominator divisible by p).
  inline std::vector<PrimeField> split_primes(std::uint32_t conductor,
                                              std::span<Cyclotomic const> values,
                                              std::size_t count) {
    std::vector<PrimeField> out;
    std::uint64_t const limit = (std::uint64_t{1} << 31) - 1;
    for (std::uint64_t k = (limit - 1) / conductor; k > 0 && out.size() < count;
         --k) {
      std::uint64_t const p = k * conductor + 1;
      if (!is_prime_u32(p)) {
        continue;
      }
      PrimeField f;
      f.p = static_cast<std::uint32_t>(p);
      f.conductor = conductor;
      f.root = detail::primitive_root_of_order(f.p, conductor);
      bool ok = true;
      for (auto const& v : values) {
        if (!f.reduce(v)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        out.push_back(f);
      }
    }
    if (out.size() < count) {
      throw CapExceeded("not enough split primes below 2^31 for conductor "
                        + std::to_string(conductor));
    }
    return out;
  }

  //! x mod p for x < 2^62 and p < 2^31 without a hardware divide.
  class BarrettReducer {
   public:
    explicit BarrettReducer(std::uint32_t p)
        : p_(p), m_(~std::uint64_t{0} / p) {}

    std::uint32_t operator()(std::uint64_t x) const noexcept {
      auto const q = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(x) * m_) >> 64);
      std::uint64_t r = x - q * p_;
      while (r >= p_) {
        r -= p_;
      }
      return static_cast<std::uint32_t>(r);
    }

   private:
    std::uint64_t p_;
    std::uint64_t m_;
  };

  //! Row-major dense elimination; pivot is the first nonzero at or below the
  //! current row in each column. Destroys `a`.
  inline std::size_t rank_mod_p(std::vector<std::uint32_t>& a,
                                std::size_t rows,
                                std::size_t cols,
                                std::uint32_t p) {
    BarrettReducer const red(p);
    std::vector<std::uint32_t> nz;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
      std::size_t piv = rows;
      for (std::size_t r = rank; r < rows; ++r) {
        if (a[r * cols + c] != 0) {
          piv = r;
          break;
        }
      }
      if (piv == rows) {
        continue;
      }
      if (piv != rank) {
        for (std::size_t j = c; j < cols; ++j) {
          std::swap(a[piv * cols + j], a[rank * cols + j]);
        }
      }
      std::uint32_t* prow = &a[rank * cols];
      std::uint64_t const inv = inv_mod(prow[c], p);
      nz.clear();
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (prow[j] != 0) {
          prow[j] = red(prow[j] * inv);
          nz.push_back(static_cast<std::uint32_t>(j));
        }
      }
      prow[c] = 1;
      for (std::size_t r = rank + 1; r < rows; ++r) {
        std::uint32_t* row = &a[r * cols];
        std::uint64_t const f = row[c];
        if (f == 0) {
          continue;
        }
        std::uint64_t const nf = p - f;
        for (std::uint32_t j : nz) {
          row[j] = red(row[j] + nf * prow[j]);
        }
        row[c] = 0;
      }
      ++rank;
    }
    return rank;
  }

}  // namespace collapse

#endif  // COLLAPSE_MODULAR_HPP_

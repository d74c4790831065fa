#ifndef COLLAPSE_BRAIDING_HPP_
#define COLLAPSE_BRAIDING_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cocycle.hpp"
#include "cyclotomic.hpp"
#include "error.hpp"
#include "rack.hpp"

namespace collapse {

  //! A monomial matrix: column j has the single entry coeff[j] in row
  //! target[j].
  class MonomialOperator {
   public:
    MonomialOperator() = default;
    MonomialOperator(std::vector<std::uint32_t> target,
                     std::vector<Cyclotomic> coeff)
        : target_(std::move(target)), coeff_(std::move(coeff)) {
      if (target_.size() != coeff_.size()) {
        throw InputError("monomial operator: size mismatch");
      }
    }

    static MonomialOperator identity(std::size_t dim) {
      std::vector<std::uint32_t> t(dim);
      for (std::size_t i = 0; i < dim; ++i) {
        t[i] = static_cast<std::uint32_t>(i);
      }
      return MonomialOperator(std::move(t),
                              std::vector<Cyclotomic>(dim, Cyclotomic(1L)));
    }

    std::size_t dimension() const noexcept {
      return target_.size();
    }
    std::uint32_t target(std::size_t col) const {
      return target_[col];
    }
    Cyclotomic const& coefficient(std::size_t col) const {
      return coeff_[col];
    }

    Cyclotomic entry(std::size_t row, std::size_t col) const {
      return target_[col] == row ? coeff_[col] : Cyclotomic();
    }

    friend MonomialOperator operator*(MonomialOperator const& a,
                                      MonomialOperator const& b) {
      if (a.dimension() != b.dimension()) {
        throw InputError("monomial operator: dimension mismatch");
      }
      std::size_t const n = b.dimension();
      std::vector<std::uint32_t> t(n);
      std::vector<Cyclotomic> c(n);
      for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t const k = b.target_[j];
        t[j] = a.target_[k];
        c[j] = a.coeff_[k] * b.coeff_[j];
      }
      return MonomialOperator(std::move(t), std::move(c));
    }

    friend bool operator==(MonomialOperator const& a,
                           MonomialOperator const& b) {
      return a.target_ == b.target_ && a.coeff_ == b.coeff_;
    }

   private:
    std::vector<std::uint32_t> target_;
    std::vector<Cyclotomic> coeff_;
  };

  //! Column-sparse exact matrix; each column is sorted by row with no
  //! stored zeros.
  class SparseOperator {
   public:
    using Column = std::vector<std::pair<std::uint32_t, Cyclotomic>>;

    SparseOperator() = default;
    SparseOperator(std::size_t rows, std::vector<Column> cols)
        : rows_(rows), cols_(std::move(cols)) {
      for (auto& col : cols_) {
        normalize(col);
      }
    }

    static SparseOperator zero(std::size_t dim) {
      return SparseOperator(dim, std::vector<Column>(dim));
    }

    static SparseOperator identity(std::size_t dim) {
      std::vector<Column> cols(dim);
      for (std::size_t j = 0; j < dim; ++j) {
        cols[j].emplace_back(static_cast<std::uint32_t>(j), Cyclotomic(1L));
      }
      return SparseOperator(dim, std::move(cols));
    }

    static SparseOperator from_monomial(MonomialOperator const& m) {
      std::vector<Column> cols(m.dimension());
      for (std::size_t j = 0; j < m.dimension(); ++j) {
        cols[j].emplace_back(m.target(j), m.coefficient(j));
      }
      return SparseOperator(m.dimension(), std::move(cols));
    }

    std::size_t rows() const noexcept {
      return rows_;
    }
    std::size_t cols() const noexcept {
      return cols_.size();
    }
    Column const& column(std::size_t j) const {
      return cols_[j];
    }
    std::vector<Column> const& columns() const noexcept {
      return cols_;
    }

    std::size_t nonzeros() const {
      std::size_t k = 0;
      for (auto const& c : cols_) {
        k += c.size();
      }
      return k;
    }
    bool is_zero() const {
      return nonzeros() == 0;
    }

    Cyclotomic entry(std::size_t row, std::size_t col) const {
      for (auto const& [r, v] : cols_[col]) {
        if (r == row) {
          return v;
        }
      }
      return Cyclotomic();
    }

    friend SparseOperator operator+(SparseOperator const& a,
                                    SparseOperator const& b) {
      check_shape(a, b);
      std::vector<Column> out(a.cols());
      for (std::size_t j = 0; j < a.cols(); ++j) {
        out[j] = a.cols_[j];
        out[j].insert(out[j].end(), b.cols_[j].begin(), b.cols_[j].end());
      }
      return SparseOperator(a.rows_, std::move(out));
    }

    friend SparseOperator operator*(SparseOperator const& a,
                                    SparseOperator const& b) {
      if (a.cols() != b.rows()) {
        throw InputError("sparse operator: dimension mismatch");
      }
      std::vector<Column> out(b.cols());
      for (std::size_t j = 0; j < b.cols(); ++j) {
        Column acc;
        for (auto const& [k, bv] : b.cols_[j]) {
          for (auto const& [r, av] : a.cols_[k]) {
            acc.emplace_back(r, av * bv);
          }
        }
        out[j] = std::move(acc);
      }
      return SparseOperator(a.rows_, std::move(out));
    }

    friend SparseOperator operator*(SparseOperator const& a,
                                    MonomialOperator const& b) {
      if (a.cols() != b.dimension()) {
        throw InputError("sparse operator: dimension mismatch");
      }
      std::vector<Column> out(b.dimension());
      for (std::size_t j = 0; j < b.dimension(); ++j) {
        Column col = a.cols_[b.target(j)];
        for (auto& [r, v] : col) {
          v = v * b.coefficient(j);
        }
        out[j] = std::move(col);
      }
      return SparseOperator(a.rows_, std::move(out));
    }

    friend bool operator==(SparseOperator const& a, SparseOperator const& b) {
      return a.rows_ == b.rows_ && a.cols_ == b.cols_;
    }

   private:
    static void check_shape(SparseOperator const& a, SparseOperator const& b) {
      if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InputError("sparse operator: shape mismatch");
      }
    }

    // Sort by row, merge duplicates, drop zeros.
    static void normalize(Column& col) {
      std::stable_sort(col.begin(), col.end(),
                       [](auto const& x, auto const& y) {
                         return x.first < y.first;
                       });
      Column merged;
      for (auto& e : col) {
        if (!merged.empty() && merged.back().first == e.first) {
          merged.back().second += e.second;
        } else {
          merged.push_back(std::move(e));
        }
      }
      std::erase_if(merged, [](auto const& e) { return e.second.is_zero(); });
      col = std::move(merged);
    }

    std::size_t rows_ = 0;
    std::vector<Column> cols_;
  };

  //! A rack with a valid degree-one cocycle; the braiding is
  //! c(e_x (x) e_y) = q_{x,y} e_{x|>y} (x) e_x.
  class BraidedSpace {
   public:
    //! Throws InputError naming the first violated triple.
    explicit BraidedSpace(Cocycle q) : q_(std::move(q)) {
      std::vector<RootOfUnity> roots;
      roots.reserve(q_.values().size());
      for (auto const& v : q_.values()) {
        RootOfUnity r(1, 0);
        if (!as_root_of_unity(v, r)) {
          break;
        }
        roots.push_back(r);
      }
      std::optional<std::array<RackIndex, 3>> bad;
      if (roots.size() == q_.values().size()) {
        bad = find_cocycle_violation(UnitCocycle(q_.rack_ptr(), std::move(roots)));
      } else {
        bad = find_cocycle_violation(q_);
      }
      if (bad) {
        throw InputError("cocycle identity fails at (x, y, z) = ("
                         + std::to_string((*bad)[0]) + ", "
                         + std::to_string((*bad)[1]) + ", "
                         + std::to_string((*bad)[2]) + ")");
      }
    }

    explicit BraidedSpace(UnitCocycle const& q) : q_(to_cyclotomic(q)) {
      auto bad = find_cocycle_violation(q);
      if (bad) {
        detail::invariant_failure("cocycle identity fails at ("
                                  + std::to_string((*bad)[0]) + ", "
                                  + std::to_string((*bad)[1]) + ", "
                                  + std::to_string((*bad)[2]) + ")");
      }
    }

    Rack const& rack() const noexcept {
      return q_.rack();
    }
    Cocycle const& cocycle() const noexcept {
      return q_;
    }
    std::size_t dimension() const noexcept {
      return q_.size();
    }

   private:
    Cocycle q_;
  };

  //! The matrix of c on V (x) V in the basis e_x (x) e_y, index x*n + y.
  inline MonomialOperator braiding_operator(BraidedSpace const& v) {
    std::size_t const n = v.dimension();
    Rack const& r = v.rack();
    std::vector<std::uint32_t> t(n * n);
    std::vector<Cyclotomic> c(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        t[x * n + y] = static_cast<std::uint32_t>(r(x, y) * n + x);
        c[x * n + y] = v.cocycle()(x, y);
      }
    }
    return MonomialOperator(std::move(t), std::move(c));
  }

  //! ipow with overflow check against `cap`.
  inline std::size_t checked_power(std::size_t base,
                                   std::size_t exp,
                                   std::size_t cap) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
      if (base != 0 && r > cap / base) {
        throw CapExceeded(std::to_string(base) + "^" + std::to_string(exp)
                          + " exceeds the row cap " + std::to_string(cap));
      }
      r *= base;
    }
    return r;
  }

  inline constexpr std::size_t kDefaultRowCap = 20000;

  //! c_1, ..., c_{n-1} on V^{(x)n}, c_i acting on tensor positions i, i+1
  //! (1-based). Basis order is lexicographic with position 1 most
  //! significant.
  class BraidOperators {
   public:
    BraidOperators(BraidedSpace const& v,
                   std::size_t degree,
                   std::size_t row_cap = kDefaultRowCap)
        : degree_(degree), base_dim_(v.dimension()) {
      if (degree == 0) {
        throw InputError("braid operators need degree >= 1");
      }
      std::size_t const d = base_dim_;
      dim_ = checked_power(d, degree, row_cap);
      Rack const& r = v.rack();
      for (std::size_t i = 1; i < degree; ++i) {
        // stride of position i+1; position i has stride d * low.
        std::size_t const low = checked_power(d, degree - i - 1, row_cap);
        std::vector<std::uint32_t> t(dim_);
        std::vector<Cyclotomic> c(dim_);
        for (std::size_t u = 0; u < dim_; ++u) {
          std::size_t const b = (u / low) % d;
          std::size_t const a = (u / (low * d)) % d;
          std::size_t const rest = u - (a * d + b) * low;
          t[u] = static_cast<std::uint32_t>(rest + (r(a, b) * d + a) * low);
          c[u] = v.cocycle()(a, b);
        }
        ops_.emplace_back(std::move(t), std::move(c));
      }
    }

    std::size_t degree() const noexcept {
      return degree_;
    }
    std::size_t base_dimension() const noexcept {
      return base_dim_;
    }
    std::size_t dimension() const noexcept {
      return dim_;
    }
    //! c_i for 1 <= i < degree().
    MonomialOperator const& c(std::size_t i) const {
      if (i < 1 || i >= degree_) {
        throw InputError("braid generator index out of range");
      }
      return ops_[i - 1];
    }

   private:
    std::size_t degree_;
    std::size_t base_dim_;
    std::size_t dim_ = 1;
    std::vector<MonomialOperator> ops_;
  };

}  // namespace collapse

#endif  // COLLAPSE_BRAIDING_HPP_

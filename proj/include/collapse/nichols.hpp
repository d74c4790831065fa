#ifndef COLLAPSE_NICHOLS_HPP_
#define COLLAPSE_NICHOLS_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "braiding.hpp"
#include "cyclotomic.hpp"
#include "error.hpp"
#include "modular.hpp"
#include "rack.hpp"

namespace collapse {

  //! A reduced word for the permutation with one-line images `sigma`
  //! (0-based): indices i >= 1 of adjacent transpositions s_i = (i, i+1)
  //! with sigma = s_{w[0]} ... s_{w[k-1]}, k the inversion count. Found by
  //! bubble sort, so deterministic.
  inline std::vector<std::size_t> reduced_word(std::span<std::size_t const> sigma) {
    std::size_t const n = sigma.size();
    std::vector<bool> seen(n, false);
    for (auto v : sigma) {
      if (v >= n || seen[v]) {
        throw InputError("reduced_word: not a permutation");
      }
      seen[v] = true;
    }
    std::vector<std::size_t> a(sigma.begin(), sigma.end());
    std::vector<std::size_t> swaps;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 1; i < n; ++i) {
        if (a[i - 1] > a[i]) {
          std::swap(a[i - 1], a[i]);
          swaps.push_back(i);
          changed = true;
        }
      }
    }
    // sigma s_{j1} ... s_{jk} = e, so sigma = s_{jk} ... s_{j1}.
    std::reverse(swaps.begin(), swaps.end());
    return swaps;
  }

  //! c_{i1} ... c_{ik} along a word; the empty word gives the identity.
  inline MonomialOperator word_operator(BraidOperators const& ops,
                                        std::span<std::size_t const> word) {
    MonomialOperator m = MonomialOperator::identity(ops.dimension());
    for (std::size_t i : word) {
      m = m * ops.c(i);
    }
    return m;
  }

  inline MonomialOperator matsumoto_operator(BraidOperators const& ops,
                                             std::span<std::size_t const> sigma) {
    if (sigma.size() != ops.degree()) {
      throw InputError("permutation degree differs from the tensor degree");
    }
    auto w = reduced_word(sigma);
    return word_operator(ops, w);
  }

  inline constexpr std::size_t kDirectSymmetrizerCap = 5;

  //! The literal sum over all of S_n.
  inline SparseOperator quantum_symmetrizer_direct(BraidOperators const& ops,
                                                   std::size_t cap
                                                   = kDirectSymmetrizerCap) {
    std::size_t const n = ops.degree();
    if (n > cap) {
      throw CapExceeded("direct symmetrizer limited to degree "
                        + std::to_string(cap));
    }
    std::vector<std::size_t> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::vector<SparseOperator::Column> cols(ops.dimension());
    do {
      MonomialOperator m = matsumoto_operator(ops, sigma);
      for (std::size_t j = 0; j < m.dimension(); ++j) {
        cols[j].emplace_back(m.target(j), m.coefficient(j));
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return SparseOperator(ops.dimension(), std::move(cols));
  }

  //! Q_n via Q^(k) = Q^(k+1) (id + c_k + c_k c_{k+1} + ... + c_k ... c_{n-1}),
  //! Q^(n) = id, Q_n = Q^(1); equivalently (id (x) Q_{n-1}) times the sum of
  //! ascending prefixes c_1 ... c_j.
  inline SparseOperator quantum_symmetrizer(BraidOperators const& ops) {
    std::size_t const n = ops.degree();
    std::size_t const dim = ops.dimension();
    SparseOperator result = SparseOperator::identity(dim);
    for (std::size_t k = n - 1; k >= 1; --k) {
      std::vector<SparseOperator::Column> cols(dim);
      MonomialOperator prefix = MonomialOperator::identity(dim);
      for (std::size_t j = k;; ++j) {
        for (std::size_t c = 0; c < dim; ++c) {
          cols[c].emplace_back(prefix.target(c), prefix.coefficient(c));
        }
        if (j == n) {
          break;
        }
        prefix = prefix * ops.c(j);
      }
      result = result * SparseOperator(dim, std::move(cols));
    }
    return result;
  }

  namespace detail {
    template <typename V>
    using SparseColumns = std::vector<std::vector<std::pair<std::uint32_t, V>>>;

    //! Three independent prime fields evaluated in lockstep.
    struct MultiModRing {
      static constexpr std::size_t kLanes = 3;
      using value_type = std::array<std::uint32_t, kLanes>;
      std::array<std::uint32_t, kLanes> p{};

      value_type zero() const {
        return {0, 0, 0};
      }
      value_type one() const {
        return {1, 1, 1};
      }
      bool is_zero(value_type const& v) const {
        return v[0] == 0 && v[1] == 0 && v[2] == 0;
      }
      value_type mul(value_type const& a, value_type const& b) const {
        value_type r;
        for (std::size_t l = 0; l < kLanes; ++l) {
          r[l] = static_cast<std::uint32_t>(mul_mod(a[l], b[l], p[l]));
        }
        return r;
      }
      void fma(value_type& acc, value_type const& a, value_type const& b) const {
        for (std::size_t l = 0; l < kLanes; ++l) {
          acc[l] = static_cast<std::uint32_t>(
              (acc[l] + mul_mod(a[l], b[l], p[l])) % p[l]);
        }
      }
    };

    struct ExactRing {
      using value_type = Cyclotomic;
      value_type zero() const {
        return Cyclotomic();
      }
      value_type one() const {
        return Cyclotomic(1L);
      }
      bool is_zero(value_type const& v) const {
        return v.is_zero();
      }
      value_type mul(value_type const& a, value_type const& b) const {
        return a * b;
      }
      void fma(value_type& acc, value_type const& a, value_type const& b) const {
        acc += a * b;
      }
    };

    //! Q_1, Q_2, ... built level by level from Q_n = (id (x) Q_{n-1}) T_n,
    //! T_n = sum_{k<n} c_1 ... c_k, applied column by column.
    template <typename Ring>
    class SymmetrizerTower {
     public:
      using V = typename Ring::value_type;

      SymmetrizerTower(Rack const& rack, std::vector<V> q, Ring ring)
          : ring_(std::move(ring)),
            d_(rack.size()),
            table_(rack.table().begin(), rack.table().end()),
            q_(std::move(q)),
            dim_(d_),
            cols_(d_) {
        for (std::size_t j = 0; j < d_; ++j) {
          cols_[j].emplace_back(static_cast<std::uint32_t>(j), ring_.one());
        }
      }

      Ring const& ring() const noexcept {
        return ring_;
      }
      std::size_t degree() const noexcept {
        return degree_;
      }
      std::size_t dimension() const noexcept {
        return dim_;
      }
      SparseColumns<V> const& columns() const noexcept {
        return cols_;
      }

      void advance(std::size_t row_cap) {
        std::size_t const n = degree_ + 1;
        std::size_t const new_dim = checked_power(d_, n, row_cap);
        SparseColumns<V> next(new_dim);
        std::vector<V> acc(new_dim, ring_.zero());
        std::vector<char> mark(new_dim, 0);
        std::vector<std::uint32_t> touched;
        std::vector<std::size_t> digits(n), w(n);
        for (std::size_t u = 0; u < new_dim; ++u) {
          for (std::size_t i = n, x = u; i-- > 0; x /= d_) {
            digits[i] = x % d_;
          }
          for (std::size_t k = 0; k < n; ++k) {
            // c_1 c_2 ... c_k e_u: c_k acts first.
            w = digits;
            V coef = ring_.one();
            for (std::size_t i = k; i >= 1; --i) {
              std::size_t const a = w[i - 1];
              std::size_t const b = w[i];
              coef = ring_.mul(coef, q_[a * d_ + b]);
              w[i - 1] = table_[a * d_ + b];
              w[i] = a;
            }
            std::size_t rest = 0;
            for (std::size_t i = 1; i < n; ++i) {
              rest = rest * d_ + w[i];
            }
            std::size_t const offset = w[0] * dim_;
            for (auto const& [r, val] : cols_[rest]) {
              std::size_t const row = offset + r;
              ring_.fma(acc[row], coef, val);
              if (!mark[row]) {
                mark[row] = 1;
                touched.push_back(static_cast<std::uint32_t>(row));
              }
            }
          }
          std::sort(touched.begin(), touched.end());
          auto& col = next[u];
          for (std::uint32_t row : touched) {
            if (!ring_.is_zero(acc[row])) {
              col.emplace_back(row, std::move(acc[row]));
            }
            acc[row] = ring_.zero();
            mark[row] = 0;
          }
          touched.clear();
        }
        cols_ = std::move(next);
        dim_ = new_dim;
        degree_ = n;
      }

     private:
      Ring ring_;
      std::size_t d_;
      std::vector<RackIndex> table_;
      std::vector<V> q_;
      std::size_t degree_ = 1;
      std::size_t dim_;
      SparseColumns<V> cols_;
    };

    //! Connected components of the bipartite row/column pattern; the matrix
    //! is block diagonal over them. Ordered by least member.
    template <typename V>
    std::vector<std::vector<std::uint32_t>>
    pattern_blocks(SparseColumns<V> const& cols) {
      std::size_t const n = cols.size();
      std::vector<std::uint32_t> parent(n);
      std::iota(parent.begin(), parent.end(), 0u);
      auto find = [&](std::uint32_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x = parent[x];
        }
        return x;
      };
      for (std::size_t j = 0; j < n; ++j) {
        for (auto const& e : cols[j]) {
          auto a = find(static_cast<std::uint32_t>(j));
          auto b = find(e.first);
          if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
          }
        }
      }
      std::vector<std::vector<std::uint32_t>> blocks;
      std::vector<std::uint32_t> slot(n, 0xffffffffu);
      for (std::size_t i = 0; i < n; ++i) {
        auto r = find(static_cast<std::uint32_t>(i));
        if (slot[r] == 0xffffffffu) {
          slot[r] = static_cast<std::uint32_t>(blocks.size());
          blocks.emplace_back();
        }
        blocks[slot[r]].push_back(static_cast<std::uint32_t>(i));
      }
      return blocks;
    }

    //! Sum of b^3 over the nonempty blocks; dense elimination is cubic.
    template <typename V>
    std::uint64_t elimination_work(
        SparseColumns<V> const& cols,
        std::vector<std::vector<std::uint32_t>> const& blocks) {
      std::uint64_t w = 0;
      for (auto const& block : blocks) {
        bool const empty = std::all_of(block.begin(), block.end(),
                                       [&](std::uint32_t j) { return cols[j].empty(); });
        if (!empty) {
          std::uint64_t const b = block.size();
          w += b * b * b;
        }
      }
      return w;
    }

    template <typename V>
    std::vector<std::vector<std::uint32_t>>
    budgeted_blocks(SparseColumns<V> const& cols, std::uint64_t work_cap) {
      auto blocks = pattern_blocks(cols);
      std::uint64_t const w = elimination_work(cols, blocks);
      if (w > work_cap) {
        throw WorkCapExceeded("elimination work " + std::to_string(w)
                              + " exceeds cap " + std::to_string(work_cap));
      }
      return blocks;
    }

    inline std::array<std::size_t, MultiModRing::kLanes>
    rank_lanes(MultiModRing const& ring,
               SparseColumns<MultiModRing::value_type> const& cols,
               std::uint64_t work_cap) {
      std::array<std::size_t, MultiModRing::kLanes> total{};
      std::vector<std::uint32_t> local(cols.size());
      for (auto const& block : budgeted_blocks(cols, work_cap)) {
        std::size_t const b = block.size();
        bool empty = true;
        for (std::size_t i = 0; i < b; ++i) {
          local[block[i]] = static_cast<std::uint32_t>(i);
          empty = empty && cols[block[i]].empty();
        }
        if (empty) {
          continue;
        }
        for (std::size_t l = 0; l < MultiModRing::kLanes; ++l) {
          std::vector<std::uint32_t> a(b * b, 0);
          for (std::size_t i = 0; i < b; ++i) {
            for (auto const& [r, v] : cols[block[i]]) {
              a[local[r] * b + i] = v[l];
            }
          }
          total[l] += rank_mod_p(a, b, b, ring.p[l]);
        }
      }
      return total;
    }

    //! Fraction-free (Bareiss) elimination over the cyclotomic field.
    inline std::size_t bareiss_rank(std::vector<Cyclotomic>& a,
                                    std::size_t rows,
                                    std::size_t cols) {
      std::size_t rank = 0;
      Cyclotomic prev(1L);
      for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t r = rank; r < rows; ++r) {
          if (!a[r * cols + c].is_zero()) {
            piv = r;
            break;
          }
        }
        if (piv == rows) {
          continue;
        }
        if (piv != rank) {
          for (std::size_t j = 0; j < cols; ++j) {
            std::swap(a[piv * cols + j], a[rank * cols + j]);
          }
        }
        Cyclotomic const p = a[rank * cols + c];
        for (std::size_t r = rank + 1; r < rows; ++r) {
          Cyclotomic const f = a[r * cols + c];
          for (std::size_t j = c + 1; j < cols; ++j) {
            Cyclotomic v = p * a[r * cols + j];
            if (!f.is_zero()) {
              v = v - f * a[rank * cols + j];
            }
            a[r * cols + j] = v.is_zero() ? v : v / prev;
          }
          a[r * cols + c] = Cyclotomic();
        }
        prev = p;
        ++rank;
      }
      return rank;
    }

    inline std::size_t rank_exact(SparseColumns<Cyclotomic> const& cols,
                                  std::uint64_t work_cap) {
      std::size_t total = 0;
      std::vector<std::uint32_t> local(cols.size());
      for (auto const& block : budgeted_blocks(cols, work_cap)) {
        std::size_t const b = block.size();
        bool empty = true;
        for (std::size_t i = 0; i < b; ++i) {
          local[block[i]] = static_cast<std::uint32_t>(i);
          empty = empty && cols[block[i]].empty();
        }
        if (empty) {
          continue;
        }
        std::vector<Cyclotomic> a(b * b);
        for (std::size_t i = 0; i < b; ++i) {
          for (auto const& [r, v] : cols[block[i]]) {
            a[local[r] * b + i] = v;
          }
        }
        total += bareiss_rank(a, b, b);
      }
      return total;
    }
  }  // namespace detail

  enum class RankMethod { MultiModular, Exact };

  //! Per-degree elimination budget, in units of b^3 summed over blocks.
  inline constexpr std::uint64_t kDefaultWorkCap = 10'000'000'000ULL;

  struct NicholsOptions {
    std::size_t max_degree = 12;
    std::size_t row_cap = kDefaultRowCap;
    std::uint64_t work_cap = kDefaultWorkCap;
    RankMethod method = RankMethod::MultiModular;
  };

  enum class SeriesStatus { Complete, Truncated };

  inline char const* to_string(SeriesStatus s) {
    return s == SeriesStatus::Complete ? "complete" : "truncated";
  }

  //! d_0, d_1, ... of the Nichols algebra. Complete iff the last entry is
  //! a zero degree.
  struct GradedDims {
    std::vector<std::size_t> dims;
    SeriesStatus status = SeriesStatus::Truncated;
    std::string truncated_by;  // "degree", "rows" or "work" when truncated
    std::size_t max_degree = 0;
    std::size_t row_cap = 0;
    std::uint64_t work_cap = 0;
    std::size_t arbitrated_degrees = 0;

    std::optional<std::size_t> total() const {
      if (status != SeriesStatus::Complete) {
        return std::nullopt;
      }
      return std::accumulate(dims.begin(), dims.end(), std::size_t{0});
    }
  };

  //! Successive ranks of Q_2, Q_3, ... for one braided space.
  class SymmetrizerRanks {
   public:
    explicit SymmetrizerRanks(BraidedSpace const& v,
                              RankMethod method = RankMethod::MultiModular)
        : rack_(v.rack()), method_(method) {
      std::uint32_t m = 1;
      for (auto const& x : v.cocycle().values()) {
        m = std::lcm(m, x.conductor());
      }
      conductor_ = m;
      for (auto const& x : v.cocycle().values()) {
        exact_q_.push_back(x.lift(m));
      }
      if (method_ == RankMethod::MultiModular) {
        auto primes = split_primes(m, exact_q_, detail::MultiModRing::kLanes);
        detail::MultiModRing ring;
        std::vector<detail::MultiModRing::value_type> q(exact_q_.size());
        for (std::size_t l = 0; l < primes.size(); ++l) {
          ring.p[l] = primes[l].p;
          for (std::size_t i = 0; i < exact_q_.size(); ++i) {
            q[i][l] = *primes[l].reduce(exact_q_[i]);
          }
        }
        primes_ = primes;
        modular_.emplace(rack_, std::move(q), ring);
      } else {
        exact_.emplace(rack_, exact_q_, detail::ExactRing{});
      }
    }

    std::size_t degree() const noexcept {
      return modular_ ? modular_->degree() : exact_->degree();
    }
    std::uint32_t conductor() const noexcept {
      return conductor_;
    }
    std::vector<PrimeField> const& primes() const noexcept {
      return primes_;
    }
    //! Number of degrees at which the prime fields disagreed.
    std::size_t arbitrations() const noexcept {
      return arbitrations_;
    }

    //! rank Q_{degree()+1}; throws CapExceeded past `row_cap` rows and
    //! WorkCapExceeded past `work_cap`. After a throw the object is spent.
    std::size_t next(std::size_t row_cap,
                     std::uint64_t work_cap = kDefaultWorkCap) {
      if (!modular_) {
        exact_->advance(row_cap);
        return detail::rank_exact(exact_->columns(), work_cap);
      }
      modular_->advance(row_cap);
      auto lanes = detail::rank_lanes(modular_->ring(), modular_->columns(),
                                      work_cap);
      if (std::all_of(lanes.begin(), lanes.end(),
                      [&](std::size_t r) { return r == lanes[0]; })) {
        return lanes[0];
      }
      ++arbitrations_;
      if (!exact_) {
        exact_.emplace(rack_, exact_q_, detail::ExactRing{});
      }
      while (exact_->degree() < modular_->degree()) {
        exact_->advance(row_cap);
      }
      return detail::rank_exact(exact_->columns(), work_cap);
    }

   private:
    Rack rack_;
    RankMethod method_;
    std::uint32_t conductor_ = 1;
    std::vector<Cyclotomic> exact_q_;
    std::vector<PrimeField> primes_;
    std::optional<detail::SymmetrizerTower<detail::MultiModRing>> modular_;
    std::optional<detail::SymmetrizerTower<detail::ExactRing>> exact_;
    std::size_t arbitrations_ = 0;
  };

  //! dim of the degree-n component, rank Q_n.
  inline std::size_t graded_dimension(BraidedSpace const& v,
                                      std::size_t n,
                                      NicholsOptions const& opts = {}) {
    if (n == 0) {
      return 1;
    }
    if (n == 1) {
      return v.dimension();
    }
    checked_power(v.dimension(), n, opts.row_cap);
    SymmetrizerRanks ranks(v, opts.method);
    std::size_t r = 0;
    while (ranks.degree() < n) {
      r = ranks.next(opts.row_cap, opts.work_cap);
    }
    return r;
  }

  //! Degrees 0, 1, ... until a zero degree (complete) or until the next
  //! degree would exceed max_degree, row_cap rows or work_cap (truncated).
  inline GradedDims hilbert_prefix(BraidedSpace const& v,
                                   NicholsOptions const& opts = {}) {
    GradedDims g;
    g.max_degree = opts.max_degree;
    g.row_cap = opts.row_cap;
    g.work_cap = opts.work_cap;
    g.dims.push_back(1);
    std::size_t const d = v.dimension();
    if (opts.max_degree == 0) {
      g.truncated_by = "degree";
      return g;
    }
    g.dims.push_back(d);
    std::optional<SymmetrizerRanks> ranks;
    for (std::size_t n = 2; n <= opts.max_degree; ++n) {
      try {
        checked_power(d, n, opts.row_cap);
      } catch (CapExceeded const&) {
        g.truncated_by = "rows";
        return g;
      }
      if (!ranks) {
        ranks.emplace(v, opts.method);
      }
      std::size_t r = 0;
      try {
        r = ranks->next(opts.row_cap, opts.work_cap);
      } catch (WorkCapExceeded const&) {
        g.arbitrated_degrees = ranks->arbitrations();
        g.truncated_by = "work";
        return g;
      }
      g.dims.push_back(r);
      g.arbitrated_degrees = ranks->arbitrations();
      if (r == 0) {
        g.status = SeriesStatus::Complete;
        return g;
      }
    }
    g.truncated_by = "degree";
    return g;
  }

  //! The exact Q_n in the lexicographic basis of V^{(x)n}.
  inline SparseOperator symmetrizer_matrix(BraidedSpace const& v,
                                           std::size_t n,
                                           std::size_t row_cap = kDefaultRowCap) {
    if (n == 0) {
      return SparseOperator::identity(1);
    }
    std::uint32_t m = 1;
    for (auto const& x : v.cocycle().values()) {
      m = std::lcm(m, x.conductor());
    }
    std::vector<Cyclotomic> q;
    for (auto const& x : v.cocycle().values()) {
      q.push_back(x.lift(m));
    }
    detail::SymmetrizerTower<detail::ExactRing> tower(v.rack(), std::move(q),
                                                      detail::ExactRing{});
    while (tower.degree() < n) {
      tower.advance(row_cap);
    }
    std::vector<SparseOperator::Column> cols(tower.columns().begin(),
                                             tower.columns().end());
    return SparseOperator(tower.dimension(), std::move(cols));
  }

}  // namespace collapse

#endif  // COLLAPSE_NICHOLS_HPP_

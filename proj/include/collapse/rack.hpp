#ifndef COLLAPSE_RACK_HPP_
#define COLLAPSE_RACK_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "permutation.hpp"

namespace collapse {

  using RackIndex = std::uint32_t;

  //! True iff `table` (row-major, n x n, table[x*n+y] = x |> y) has bijective
  //! rows and is self-distributive. Exhaustive: O(n^3).
  inline bool validate_rack(std::size_t n, std::span<RackIndex const> table) {
    if (n == 0 || table.size() != n * n) {
      return false;
    }
    std::vector<bool> seen(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::fill(seen.begin(), seen.end(), false);
      for (std::size_t y = 0; y < n; ++y) {
        RackIndex v = table[x * n + y];
        if (v >= n || seen[v]) {
          return false;
        }
        seen[v] = true;
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      RackIndex const* row_x = &table[x * n];
      for (std::size_t y = 0; y < n; ++y) {
        RackIndex const* row_y = &table[y * n];
        RackIndex const* row_xy = &table[std::size_t{row_x[y]} * n];
        for (std::size_t z = 0; z < n; ++z) {
          if (row_x[row_y[z]] != row_xy[row_x[z]]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  //! A finite rack given by its full multiplication table.
  class Rack {
   public:
    Rack() = default;

    //! Throws InputError unless the table satisfies both rack axioms.
    static Rack from_table(std::size_t n, std::vector<RackIndex> table) {
      if (!validate_rack(n, table)) {
        throw InputError("table does not define a rack");
      }
      return Rack(n, std::move(table), {});
    }

    //! For constructions whose validity is checked separately.
    static Rack unchecked(std::size_t n,
                          std::vector<RackIndex> table,
                          std::vector<Permutation> labels = {}) {
      return Rack(n, std::move(table), std::move(labels));
    }

    std::size_t size() const noexcept {
      return n_;
    }

    RackIndex operator()(std::size_t x, std::size_t y) const noexcept {
      return table_[x * n_ + y];
    }

    //! The translation phi_x = x |> _.
    std::span<RackIndex const> row(std::size_t x) const noexcept {
      return {table_.data() + x * n_, n_};
    }

    std::span<RackIndex const> table() const noexcept {
      return table_;
    }

    //! phi_x^{-1}(y), found by walking the phi_x-cycle through y.
    RackIndex inverse_apply(std::size_t x, std::size_t y) const noexcept {
      auto r = row(x);
      RackIndex prev = static_cast<RackIndex>(y);
      RackIndex cur = r[y];
      while (cur != y) {
        prev = cur;
        cur = r[cur];
      }
      return prev;
    }

    bool has_labels() const noexcept {
      return !labels_.empty();
    }
    std::span<Permutation const> labels() const noexcept {
      return labels_;
    }

    friend bool operator==(Rack const& a, Rack const& b) {
      return a.n_ == b.n_ && a.table_ == b.table_;
    }

   private:
    Rack(std::size_t n,
         std::vector<RackIndex> table,
         std::vector<Permutation> labels)
        : n_(n), table_(std::move(table)), labels_(std::move(labels)) {}

    std::size_t n_ = 0;
    std::vector<RackIndex> table_;
    std::vector<Permutation> labels_;
  };

  inline bool validate_rack(Rack const& rack) {
    return validate_rack(rack.size(), rack.table());
  }

  //! Rack axioms checked modulo a set of claimed automorphisms.
  //!
  //! Each map is verified to be a bijection preserving |>; self-distributivity
  //! is then checked only for x in a set of orbit representatives of the group
  //! they generate, since automorphisms carry valid triples to valid triples.
  //! O(n^2 (|automorphisms| + orbits)) instead of O(n^3).
  inline bool
  validate_rack_with_automorphisms(Rack const& rack,
                                   std::span<std::vector<RackIndex> const> autos) {
    std::size_t const n = rack.size();
    if (n == 0 || rack.table().size() != n * n) {
      return false;
    }
    std::vector<bool> seen(n);
    for (std::size_t x = 0; x < n; ++x) {
      std::fill(seen.begin(), seen.end(), false);
      for (RackIndex v : rack.row(x)) {
        if (v >= n || seen[v]) {
          return false;
        }
        seen[v] = true;
      }
    }
    for (auto const& a : autos) {
      if (a.size() != n) {
        return false;
      }
      std::fill(seen.begin(), seen.end(), false);
      for (RackIndex v : a) {
        if (v >= n || seen[v]) {
          return false;
        }
        seen[v] = true;
      }
      for (std::size_t x = 0; x < n; ++x) {
        auto row_x = rack.row(x);
        auto row_ax = rack.row(a[x]);
        for (std::size_t y = 0; y < n; ++y) {
          if (row_ax[a[y]] != a[row_x[y]]) {
            return false;
          }
        }
      }
    }
    // Orbit representatives of <autos>.
    std::vector<bool> reached(n, false);
    std::vector<std::size_t> reps;
    for (std::size_t s = 0; s < n; ++s) {
      if (reached[s]) {
        continue;
      }
      reps.push_back(s);
      std::vector<std::size_t> queue{s};
      reached[s] = true;
      for (std::size_t h = 0; h < queue.size(); ++h) {
        for (auto const& a : autos) {
          if (!reached[a[queue[h]]]) {
            reached[a[queue[h]]] = true;
            queue.push_back(a[queue[h]]);
          }
        }
      }
    }
    for (std::size_t x : reps) {
      auto row_x = rack.row(x);
      for (std::size_t y = 0; y < n; ++y) {
        auto row_y = rack.row(y);
        auto row_xy = rack.row(row_x[y]);
        for (std::size_t z = 0; z < n; ++z) {
          if (row_x[row_y[z]] != row_xy[row_x[z]]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  //! x |> y = y.
  inline Rack trivial_rack(std::size_t n) {
    std::vector<RackIndex> t(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        t[x * n + y] = static_cast<RackIndex>(y);
      }
    }
    return Rack::unchecked(n, std::move(t));
  }

  //! x |> y = f(y) for a fixed permutation f; a rack for every f.
  inline Rack permutation_rack(Permutation const& f) {
    std::size_t const n = f.degree();
    std::vector<RackIndex> t(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        t[x * n + y] = f(static_cast<Point>(y));
      }
    }
    return Rack::unchecked(n, std::move(t));
  }

  //! The involutions of the dihedral group of order 2p in the affine model
  //! x |> y = 2x - y mod p.
  inline Rack dihedral_rack(std::size_t p) {
    if (p < 3 || p % 2 == 0) {
      throw InputError("dihedral_rack needs an odd p >= 3, got "
                       + std::to_string(p));
    }
    std::vector<RackIndex> t(p * p);
    for (std::size_t x = 0; x < p; ++x) {
      for (std::size_t y = 0; y < p; ++y) {
        t[x * p + y] = static_cast<RackIndex>((2 * x + p - y) % p);
      }
    }
    return Rack::unchecked(p, std::move(t));
  }

  //! Two copies of X on X x {0,1} (index x + i*|X|), with
  //! (x,i) |> (y,j) = (x |> y, j). Each copy is a subrack equal to X.
  inline Rack double_rack(Rack const& x_rack) {
    std::size_t const n = x_rack.size();
    std::size_t const m = 2 * n;
    std::vector<RackIndex> t(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        std::size_t const x = a % n;
        std::size_t const y = b % n;
        std::size_t const j = b / n;
        t[a * m + b] = static_cast<RackIndex>(x_rack(x, y) + j * n);
      }
    }
    return Rack::unchecked(m, std::move(t));
  }

  //! A subset of a rack closed under |>.
  struct SubrackHandle {
    Rack const* parent = nullptr;
    std::vector<RackIndex> indices;  // sorted

    std::size_t size() const noexcept {
      return indices.size();
    }
    bool contains(RackIndex x) const {
      return std::binary_search(indices.begin(), indices.end(), x);
    }
  };

  //! Restriction of |> to a closed subset, re-indexed by position in
  //! `indices`.
  inline Rack induced_rack(Rack const& rack,
                           std::span<RackIndex const> indices) {
    std::size_t const k = indices.size();
    std::vector<RackIndex> t(k * k);
    std::vector<Permutation> labels;
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        RackIndex v = rack(indices[a], indices[b]);
        auto it = std::lower_bound(indices.begin(), indices.end(), v);
        if (it == indices.end() || *it != v) {
          throw InputError("subset is not closed under the rack operation");
        }
        t[a * k + b] = static_cast<RackIndex>(it - indices.begin());
      }
    }
    if (rack.has_labels()) {
      for (RackIndex i : indices) {
        labels.push_back(rack.labels()[i]);
      }
    }
    return Rack::unchecked(k, std::move(t), std::move(labels));
  }

  inline Rack induced_rack(SubrackHandle const& sub) {
    return induced_rack(*sub.parent, sub.indices);
  }

  //! Smallest subset containing `seed` closed under |>. For a finite rack
  //! this is also closed under the inverse translations, since
  //! phi_x^{-1} is a positive power of phi_x.
  inline SubrackHandle subrack_generated(Rack const& rack,
                                         std::span<RackIndex const> seed) {
    std::size_t const n = rack.size();
    std::vector<bool> in(n, false);
    std::vector<RackIndex> members;
    for (RackIndex s : seed) {
      if (s >= n) {
        throw InputError("seed index out of range");
      }
      if (!in[s]) {
        in[s] = true;
        members.push_back(s);
      }
    }
    if (members.empty()) {
      throw InputError("subrack seed must be nonempty");
    }
    for (std::size_t head = 0; head < members.size(); ++head) {
      RackIndex const e = members[head];
      for (std::size_t i = 0; i <= head; ++i) {
        RackIndex const m = members[i];
        for (RackIndex v : {rack(e, m), rack(m, e)}) {
          if (!in[v]) {
            in[v] = true;
            members.push_back(v);
          }
        }
      }
    }
    std::sort(members.begin(), members.end());
    return SubrackHandle{&rack, std::move(members)};
  }

  //! Orbits of the group generated by all translations, each sorted, listed
  //! by least element.
  inline std::vector<std::vector<RackIndex>> inner_components(Rack const& rack) {
    std::size_t const n = rack.size();
    std::vector<RackIndex> parent(n);
    std::iota(parent.begin(), parent.end(), RackIndex{0});
    auto find = [&](RackIndex a) {
      while (parent[a] != a) {
        parent[a] = parent[parent[a]];
        a = parent[a];
      }
      return a;
    };
    for (std::size_t x = 0; x < n; ++x) {
      auto r = rack.row(x);
      for (std::size_t y = 0; y < n; ++y) {
        RackIndex a = find(static_cast<RackIndex>(y));
        RackIndex b = find(r[y]);
        if (a != b) {
          parent[std::max(a, b)] = std::min(a, b);
        }
      }
    }
    std::vector<std::vector<RackIndex>> out;
    std::vector<std::size_t> slot(n, n);
    for (std::size_t y = 0; y < n; ++y) {
      RackIndex root = find(static_cast<RackIndex>(y));
      if (slot[root] == n) {
        slot[root] = out.size();
        out.emplace_back();
      }
      out[slot[root]].push_back(static_cast<RackIndex>(y));
    }
    return out;
  }

  inline bool is_abelian(Rack const& rack) {
    for (std::size_t x = 0; x < rack.size(); ++x) {
      auto r = rack.row(x);
      for (std::size_t y = 0; y < rack.size(); ++y) {
        if (r[y] != y) {
          return false;
        }
      }
    }
    return true;
  }

  namespace detail {
    // Isomorphism invariant of an element: cycle type of its translation,
    // whether it is fixed by its own translation, and the cycle type of the
    // translation of x |> x.
    struct ElementProfile {
      std::vector<std::size_t> cycle_type;
      bool idempotent;
      std::vector<std::size_t> square_cycle_type;
      auto operator<=>(ElementProfile const&) const = default;
    };

    inline std::vector<std::size_t> translation_cycle_type(Rack const& rack,
                                                           std::size_t x) {
      std::size_t const n = rack.size();
      std::vector<bool> seen(n, false);
      std::vector<std::size_t> ct;
      auto r = rack.row(x);
      for (std::size_t i = 0; i < n; ++i) {
        if (seen[i]) {
          continue;
        }
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = r[j]) {
          seen[j] = true;
          ++len;
        }
        ct.push_back(len);
      }
      std::sort(ct.begin(), ct.end());
      return ct;
    }

    inline std::vector<ElementProfile> profiles(Rack const& rack) {
      std::vector<std::vector<std::size_t>> ct(rack.size());
      for (std::size_t x = 0; x < rack.size(); ++x) {
        ct[x] = translation_cycle_type(rack, x);
      }
      std::vector<ElementProfile> out(rack.size());
      for (std::size_t x = 0; x < rack.size(); ++x) {
        out[x] = ElementProfile{ct[x], rack(x, x) == x, ct[rack(x, x)]};
      }
      return out;
    }
  }  // namespace detail

  //! A |>-preserving bijection X -> Y (as images of 0..n-1), if one exists.
  //! Backtracking over candidates with equal translation profiles; forced
  //! images are propagated through the operation table.
  inline std::optional<std::vector<RackIndex>> are_isomorphic(Rack const& x,
                                                              Rack const& y) {
    std::size_t const n = x.size();
    if (n != y.size()) {
      return std::nullopt;
    }
    auto px = detail::profiles(x);
    auto py = detail::profiles(y);
    {
      auto sx = px;
      auto sy = py;
      std::sort(sx.begin(), sx.end());
      std::sort(sy.begin(), sy.end());
      if (sx != sy) {
        return std::nullopt;
      }
    }
    constexpr RackIndex kFree = 0xffffffffu;
    std::vector<RackIndex> fwd(n, kFree);
    std::vector<RackIndex> bwd(n, kFree);

    // Assigns a -> b and closes under the operation; on conflict returns
    // false. `trail` records every assignment for undo.
    auto assign = [&](RackIndex a, RackIndex b,
                      std::vector<RackIndex>& trail) -> bool {
      std::vector<std::pair<RackIndex, RackIndex>> pending{{a, b}};
      while (!pending.empty()) {
        auto [u, v] = pending.back();
        pending.pop_back();
        if (fwd[u] != kFree || bwd[v] != kFree) {
          if (fwd[u] == v) {
            continue;
          }
          return false;
        }
        if (px[u] != py[v]) {
          return false;
        }
        fwd[u] = v;
        bwd[v] = u;
        trail.push_back(u);
        for (RackIndex w : trail) {
          pending.emplace_back(x(u, w), y(v, fwd[w]));
          pending.emplace_back(x(w, u), y(fwd[w], v));
        }
      }
      return true;
    };
    auto undo = [&](std::vector<RackIndex>& trail, std::size_t keep) {
      while (trail.size() > keep) {
        RackIndex u = trail.back();
        trail.pop_back();
        bwd[fwd[u]] = kFree;
        fwd[u] = kFree;
      }
    };

    std::vector<RackIndex> trail;
    auto search = [&](auto&& self) -> bool {
      RackIndex a = 0;
      while (a < n && fwd[a] != kFree) {
        ++a;
      }
      if (a == n) {
        return true;
      }
      for (RackIndex b = 0; b < n; ++b) {
        if (bwd[b] != kFree || px[a] != py[b]) {
          continue;
        }
        std::size_t keep = trail.size();
        if (assign(a, b, trail) && self(self)) {
          return true;
        }
        undo(trail, keep);
      }
      return false;
    };
    if (!search(search)) {
      return std::nullopt;
    }
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (fwd[x(a, b)] != y(fwd[a], fwd[b])) {
          detail::invariant_failure("isomorphism search produced a non-map");
        }
      }
    }
    return fwd;
  }

}  // namespace collapse

#endif  // COLLAPSE_RACK_HPP_

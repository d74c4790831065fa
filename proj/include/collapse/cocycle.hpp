#ifndef COLLAPSE_COCYCLE_HPP_
#define COLLAPSE_COCYCLE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "character.hpp"
#include "conjugation.hpp"
#include "cyclotomic.hpp"
#include "error.hpp"
#include "group.hpp"
#include "rack.hpp"

namespace collapse {

  //! A degree-one rack 2-cocycle q: X x X -> nonzero scalars, stored
  //! row-major. The scalar type is Cyclotomic for general data and
  //! RootOfUnity for everything built from characters.
  template <typename Scalar>
  class BasicCocycle {
   public:
    using scalar_type = Scalar;

    BasicCocycle(std::shared_ptr<Rack const> rack, std::vector<Scalar> values)
        : rack_(std::move(rack)), values_(std::move(values)) {
      if (!rack_) {
        throw InputError("cocycle needs a rack");
      }
      if (values_.size() != rack_->size() * rack_->size()) {
        throw InputError("cocycle has " + std::to_string(values_.size())
                         + " entries, expected "
                         + std::to_string(rack_->size() * rack_->size()));
      }
      if constexpr (std::is_same_v<Scalar, Cyclotomic>) {
        for (auto const& v : values_) {
          if (v.is_zero()) {
            throw InputError("cocycle entries must be nonzero");
          }
        }
      }
    }

    Rack const& rack() const noexcept {
      return *rack_;
    }
    std::shared_ptr<Rack const> const& rack_ptr() const noexcept {
      return rack_;
    }
    std::size_t size() const noexcept {
      return rack_->size();
    }
    Scalar const& operator()(std::size_t x, std::size_t y) const {
      return values_[x * rack_->size() + y];
    }
    std::vector<Scalar> const& values() const noexcept {
      return values_;
    }

   private:
    std::shared_ptr<Rack const> rack_;
    std::vector<Scalar> values_;
  };

  using Cocycle = BasicCocycle<Cyclotomic>;
  using UnitCocycle = BasicCocycle<RootOfUnity>;

  inline Cocycle to_cyclotomic(UnitCocycle const& q) {
    std::vector<Cyclotomic> v;
    v.reserve(q.values().size());
    for (auto r : q.values()) {
      v.push_back(Cyclotomic::from_root(r));
    }
    return Cocycle(q.rack_ptr(), std::move(v));
  }

  //! First triple (x, y, z) violating q_{x,y|>z} q_{y,z} = q_{x|>y,x|>z}
  //! q_{x,z}, in lexicographic order.
  template <typename Scalar>
  std::optional<std::array<RackIndex, 3>>
  find_cocycle_violation(BasicCocycle<Scalar> const& q) {
    Rack const& r = q.rack();
    std::size_t const n = r.size();
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          if (q(x, r(y, z)) * q(y, z) != q(r(x, y), r(x, z)) * q(x, z)) {
            return std::array<RackIndex, 3>{static_cast<RackIndex>(x),
                                            static_cast<RackIndex>(y),
                                            static_cast<RackIndex>(z)};
          }
        }
      }
    }
    return std::nullopt;
  }

  template <typename Scalar>
  bool validate_cocycle(BasicCocycle<Scalar> const& q) {
    return !find_cocycle_violation(q).has_value();
  }

  template <typename Scalar>
  BasicCocycle<Scalar> constant_cocycle(std::shared_ptr<Rack const> rack,
                                        Scalar lambda) {
    if constexpr (std::is_same_v<Scalar, Cyclotomic>) {
      if (lambda.is_zero()) {
        throw InputError("constant cocycle needs a nonzero value");
      }
    }
    std::size_t const n = rack->size();
    return BasicCocycle<Scalar>(std::move(rack),
                                std::vector<Scalar>(n * n, lambda));
  }

  //! Entry-wise restriction to a closed subset; the result lives on the
  //! induced rack.
  template <typename Scalar>
  BasicCocycle<Scalar> restrict_cocycle(BasicCocycle<Scalar> const& q,
                                        SubrackHandle const& sub) {
    if (sub.parent != &q.rack() && !(sub.parent && *sub.parent == q.rack())) {
      throw InputError("subrack belongs to a different rack");
    }
    auto rack = std::make_shared<Rack const>(induced_rack(q.rack(), sub.indices));
    std::size_t const k = sub.indices.size();
    std::vector<Scalar> v;
    v.reserve(k * k);
    for (RackIndex a : sub.indices) {
      for (RackIndex b : sub.indices) {
        v.push_back(q(a, b));
      }
    }
    return BasicCocycle<Scalar>(std::move(rack), std::move(v));
  }

  //! The matrix (q_{xy}) of a braided vector space of diagonal type.
  template <typename Scalar>
  struct DiagonalBraiding {
    std::size_t rank = 0;
    std::vector<Scalar> matrix;  // row-major rank x rank

    Scalar const& operator()(std::size_t i, std::size_t j) const {
      return matrix[i * rank + j];
    }
  };

  template <typename Scalar>
  DiagonalBraiding<Scalar> diagonal_from_abelian(SubrackHandle const& sub,
                                                 BasicCocycle<Scalar> const& q) {
    Rack const& r = q.rack();
    for (RackIndex a : sub.indices) {
      for (RackIndex b : sub.indices) {
        if (r(a, b) != b) {
          throw InputError("subrack is not abelian");
        }
      }
    }
    DiagonalBraiding<Scalar> d;
    d.rank = sub.indices.size();
    for (RackIndex a : sub.indices) {
      for (RackIndex b : sub.indices) {
        d.matrix.push_back(q(a, b));
      }
    }
    return d;
  }

  //! Section data for cocycles on a conjugacy class with basepoint s.
  //!
  //! section(x) is the lexicographically smallest g with g s g^-1 = x.
  //! For a pair (x, y) with w = x |> y, the element g_w^-1 x g_y centralizes
  //! s; centralizer_index() locates it among the centralizer's elements by
  //! the images of a small base, without forming the full product.
  class ClassSections {
   public:
    ClassSections(PermutationGroup const& group,
                  ConjugacyClass const& cls,
                  Permutation const& basepoint)
        : members_(cls.members) {
      auto b = cls.index_of(basepoint);
      if (!b) {
        throw InputError("basepoint " + to_string(basepoint)
                         + " is not in the class");
      }
      basepoint_index_ = *b;
      centralizer_ = centralizer(group, basepoint);
      if (centralizer_.order() * cls.size() != group.order()) {
        detail::invariant_failure("orbit-stabilizer count for class "
                                  + cls.name);
      }

      std::size_t const n = cls.size();
      std::vector<bool> set(n, false);
      std::size_t remaining = n;
      section_.resize(n);
      section_inv_.resize(n);
      for (auto const& g : group.elements()) {
        if (remaining == 0) {
          break;
        }
        auto x = cls.index_of(g.conjugate(basepoint));
        if (!x) {
          throw InputError("basepoint class is not closed");
        }
        if (!set[*x]) {
          set[*x] = true;
          --remaining;
          section_[*x] = g;
          section_inv_[*x] = g.inverse();
        }
      }

      choose_base();
    }

    std::size_t size() const noexcept {
      return members_.size();
    }
    std::size_t basepoint_index() const noexcept {
      return basepoint_index_;
    }
    PermutationGroup const& centralizer_group() const noexcept {
      return centralizer_;
    }
    Permutation const& section(std::size_t x) const {
      return section_[x];
    }
    std::vector<Permutation> const& members() const noexcept {
      return members_;
    }

    //! Index in centralizer_group().elements() of g_w^-1 x g_y, w = x |> y.
    std::size_t centralizer_index(std::size_t x,
                                  std::size_t y,
                                  std::size_t w) const {
      std::uint64_t key = 0;
      auto const& gy = section_[y];
      auto const& xm = members_[x];
      auto const& gw = section_inv_[w];
      for (Point b : base_) {
        key = key * key_radix_ + gw(xm(gy(b)));
      }
      auto it = lookup_.find(key);
      if (it == lookup_.end()) {
        detail::invariant_failure("section product leaves the centralizer");
      }
      return it->second;
    }

   private:
    void choose_base() {
      auto const elems = centralizer_.elements();
      std::size_t const degree = centralizer_.degree();
      key_radix_ = degree;
      // Greedily add points until the image tuples separate all elements.
      std::vector<std::size_t> part(elems.size(), 0);
      std::size_t parts = 1;
      for (std::size_t p = 0; p < degree && parts < elems.size(); ++p) {
        std::unordered_map<std::uint64_t, std::size_t> relabel;
        for (std::size_t i = 0; i < elems.size(); ++i) {
          std::uint64_t k = part[i] * degree + elems[i](static_cast<Point>(p));
          part[i] = relabel.emplace(k, relabel.size()).first->second;
        }
        if (relabel.size() > parts) {
          parts = relabel.size();
          base_.push_back(static_cast<Point>(p));
        }
      }
      // keys must fit: degree^|base| < 2^64
      long double bound = 1;
      for (std::size_t i = 0; i < base_.size(); ++i) {
        bound *= static_cast<long double>(degree);
      }
      if (bound > 1.8e19L) {
        throw CapExceeded("centralizer base too long for key encoding");
      }
      for (std::size_t i = 0; i < elems.size(); ++i) {
        std::uint64_t key = 0;
        for (Point b : base_) {
          key = key * key_radix_ + elems[i](b);
        }
        lookup_.emplace(key, i);
      }
      if (lookup_.size() != elems.size()) {
        detail::invariant_failure("centralizer base does not separate");
      }
    }

    std::vector<Permutation> members_;
    std::size_t basepoint_index_ = 0;
    PermutationGroup centralizer_;
    std::vector<Permutation> section_;
    std::vector<Permutation> section_inv_;
    std::vector<Point> base_;
    std::uint64_t key_radix_ = 1;
    std::unordered_map<std::uint64_t, std::size_t> lookup_;
  };

  namespace detail {
    inline void check_character_domain(ClassSections const& sections,
                                       Character const& chi) {
      if (!(chi.domain() == sections.centralizer_group())) {
        throw InputError("character is not defined on the centralizer of "
                         "the basepoint");
      }
    }
  }  // namespace detail

  //! Exhaustive validation is used up to this class size; above it the
  //! orbit-reduced check applies.
  inline constexpr std::size_t kFullCocycleCheckLimit = 128;

  //! Checks the cocycle identity for q_{x,y} = chi(g_{x|>y}^-1 x g_y) for
  //! every character in `chars`, returning one flag per character.
  //!
  //! Conjugating a triple by h in G multiplies these q by the coboundary of
  //! x -> chi(g_x^-1 h^-1 g_{hxh^-1}), which cancels in the identity, so the
  //! defect is constant on G-orbits of triples. It suffices to test x = s,
  //! y over representatives of the centralizer orbits, and all z.
  inline std::vector<bool>
  validate_character_cocycles_reduced(ClassSections const& sections,
                                      Rack const& rack,
                                      std::span<Character const> chars) {
    for (auto const& chi : chars) {
      detail::check_character_domain(sections, chi);
    }
    std::size_t const n = rack.size();
    std::size_t const s = sections.basepoint_index();
    PermutationGroup const& cent = sections.centralizer_group();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> reps;
    {
      ConjugacyClass pseudo;
      pseudo.members = sections.members();
      std::vector<std::vector<RackIndex>> actions;
      for (auto const& g : cent.generators()) {
        actions.push_back(conjugation_action(pseudo, g));
      }
      for (std::size_t y = 0; y < n; ++y) {
        if (seen[y]) {
          continue;
        }
        reps.push_back(y);
        std::vector<std::size_t> queue{y};
        seen[y] = true;
        for (std::size_t h = 0; h < queue.size(); ++h) {
          for (auto const& a : actions) {
            if (!seen[a[queue[h]]]) {
              seen[a[queue[h]]] = true;
              queue.push_back(a[queue[h]]);
            }
          }
        }
      }
    }
    std::vector<bool> ok(chars.size(), true);
    auto row_s = rack.row(s);
    for (std::size_t y : reps) {
      auto row_y = rack.row(y);
      auto row_sy = rack.row(row_s[y]);
      for (std::size_t z = 0; z < n; ++z) {
        std::size_t const yz = row_y[z];
        std::size_t const sz = row_s[z];
        std::size_t const s_yz = row_s[yz];
        // q_{s, y|>z} q_{y, z} vs q_{s|>y, s|>z} q_{s, z}
        std::size_t const c1 = sections.centralizer_index(s, yz, s_yz);
        std::size_t const c2 = sections.centralizer_index(y, z, yz);
        std::size_t const c3 = sections.centralizer_index(row_s[y], sz, row_sy[sz]);
        std::size_t const c4 = sections.centralizer_index(s, z, sz);
        for (std::size_t k = 0; k < chars.size(); ++k) {
          auto const& e = chars[k].exponents();
          std::uint64_t const m = chars[k].conductor();
          if ((e[c1] + e[c2]) % m != (e[c3] + e[c4]) % m) {
            ok[k] = false;
          }
        }
      }
    }
    return ok;
  }

  //! q_{x,y} = chi(g_{x|>y}^-1 x g_y) on the conjugation rack of the class,
  //! certified with the cocycle identity before it is returned.
  inline UnitCocycle cocycle_from_character(ClassSections const& sections,
                                            std::shared_ptr<Rack const> rack,
                                            Character const& chi) {
    detail::check_character_domain(sections, chi);
    std::size_t const n = rack->size();
    if (n != sections.size()) {
      throw InputError("rack and class sizes differ");
    }
    std::vector<RootOfUnity> v;
    v.reserve(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      auto row = rack->row(x);
      for (std::size_t y = 0; y < n; ++y) {
        v.push_back(chi.value_at(sections.centralizer_index(x, y, row[y])));
      }
    }
    UnitCocycle q(rack, std::move(v));
    bool valid;
    if (n <= kFullCocycleCheckLimit) {
      valid = validate_cocycle(q);
    } else {
      valid = validate_character_cocycles_reduced(
          sections, *rack, std::span<Character const>(&chi, 1))[0];
    }
    if (!valid) {
      detail::invariant_failure("character-derived cocycle fails the "
                                "cocycle identity");
    }
    return q;
  }

  inline UnitCocycle cocycle_from_character(PermutationGroup const& group,
                                            ConjugacyClass const& cls,
                                            Permutation const& basepoint,
                                            Character const& chi) {
    ClassSections sections(group, cls, basepoint);
    auto rack = std::make_shared<Rack const>(conjugation_rack(group, cls));
    return cocycle_from_character(sections, std::move(rack), chi);
  }

}  // namespace collapse

#endif  // COLLAPSE_COCYCLE_HPP_

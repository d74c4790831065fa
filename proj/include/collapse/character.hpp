#ifndef COLLAPSE_CHARACTER_HPP_
#define COLLAPSE_CHARACTER_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "cyclotomic.hpp"
#include "error.hpp"
#include "group.hpp"

namespace collapse {

  //! A linear character G -> roots of unity, stored as exponents of
  //! E(conductor) indexed like domain().elements().
  class Character {
   public:
    Character(PermutationGroup domain,
              std::uint32_t conductor,
              std::vector<std::uint32_t> exponents)
        : domain_(std::move(domain)),
          conductor_(conductor),
          exponents_(std::move(exponents)) {}

    PermutationGroup const& domain() const noexcept {
      return domain_;
    }
    std::uint32_t conductor() const noexcept {
      return conductor_;
    }
    std::vector<std::uint32_t> const& exponents() const noexcept {
      return exponents_;
    }

    RootOfUnity value_at(std::size_t element_index) const {
      return RootOfUnity(conductor_, exponents_[element_index]);
    }
    RootOfUnity value(Permutation const& g) const {
      return value_at(domain_.index(g));
    }

    bool is_trivial() const {
      return std::all_of(exponents_.begin(), exponents_.end(),
                         [](std::uint32_t e) { return e == 0; });
    }

   private:
    PermutationGroup domain_;
    std::uint32_t conductor_;
    std::vector<std::uint32_t> exponents_;
  };

  //! The derived subgroup: the normal closure of the commutators of the
  //! generators.
  inline PermutationGroup derived_subgroup(PermutationGroup const& group,
                                           std::size_t cap = kDefaultOrderCap) {
    auto gens = group.generators();
    std::vector<Permutation> dgens;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        Permutation c = gens[i] * gens[j] * gens[i].inverse()
                        * gens[j].inverse();
        if (!c.is_identity()) {
          dgens.push_back(std::move(c));
        }
      }
    }
    PermutationGroup derived
        = generate_group(group.degree(), dgens, cap);
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<Permutation> current(derived.generators().begin(),
                                       derived.generators().end());
      for (auto const& g : gens) {
        for (auto const& d : current) {
          Permutation c = g.conjugate(d);
          if (!derived.contains(c)) {
            dgens.push_back(std::move(c));
            derived = generate_group(group.degree(), dgens, cap);
            changed = true;
          }
        }
      }
    }
    return derived;
  }

  //! Order of G/[G,G].
  inline std::size_t abelianization_order(PermutationGroup const& group) {
    return group.order() / derived_subgroup(group).order();
  }

  //! All linear characters of `group`, trivial character first.
  //!
  //! The abelianization A = G/[G,G] is built up along a chain
  //! 1 = A_0 < A_1 < ... < A_r = A, A_i = <A_{i-1}, g_i>, with g_i the coset
  //! of least minimal element outside A_{i-1}. A character of A_{i-1} has
  //! exactly k_i extensions, k_i the index [A_i : A_{i-1}], so the chain
  //! enumerates |A| characters in a deterministic order.
  inline std::vector<Character> linear_characters(PermutationGroup const& group) {
    std::size_t const n = group.order();
    PermutationGroup const derived = derived_subgroup(group);

    // Coset ids in order of least element; the identity's coset is 0.
    constexpr std::uint32_t kNone = 0xffffffffu;
    std::vector<std::uint32_t> coset(n, kNone);
    std::vector<std::size_t> rep;
    for (std::size_t i = 0; i < n; ++i) {
      if (coset[i] != kNone) {
        continue;
      }
      auto id = static_cast<std::uint32_t>(rep.size());
      rep.push_back(i);
      for (auto const& d : derived.elements()) {
        coset[group.index(group.element(i) * d)] = id;
      }
    }
    std::size_t const m = rep.size();
    auto mul = [&](std::size_t a, std::size_t b) -> std::size_t {
      return coset[group.index(group.element(rep[a]) * group.element(rep[b]))];
    };

    std::uint64_t exponent = 1;
    for (std::size_t a = 0; a < m; ++a) {
      std::uint64_t ord = 1;
      for (std::size_t x = a; x != 0; x = mul(x, a)) {
        ++ord;
      }
      if (a == 0) {
        ord = 1;
      }
      exponent = std::lcm(exponent, ord);
    }
    auto const conductor = static_cast<std::uint32_t>(exponent);

    // chars[c][coset] = exponent of E(conductor), defined on `members`.
    std::vector<std::size_t> members{0};
    std::vector<bool> in_sub(m, false);
    in_sub[0] = true;
    std::vector<std::vector<std::uint32_t>> chars{std::vector<std::uint32_t>(m, 0)};

    while (members.size() < m) {
      std::size_t g = 0;
      while (in_sub[g]) {
        ++g;
      }
      // k = [<A, g> : A]; powers[j] = g^j.
      std::vector<std::size_t> powers{0, g};
      while (!in_sub[powers.back()]) {
        powers.push_back(mul(powers.back(), g));
      }
      std::size_t const k = powers.size() - 1;
      std::size_t const gk = powers.back();

      std::vector<std::size_t> new_members;
      for (std::size_t j = 1; j < k; ++j) {
        for (std::size_t a : members) {
          new_members.push_back(mul(powers[j], a));
        }
      }

      std::vector<std::vector<std::uint32_t>> next;
      next.reserve(chars.size() * k);
      for (auto const& chi : chars) {
        std::uint64_t e = chi[gk];
        if (e % k != 0) {
          detail::invariant_failure("character extension is not solvable");
        }
        for (std::size_t t = 0; t < k; ++t) {
          std::uint64_t f = (e / k + t * (exponent / k)) % exponent;
          auto ext = chi;
          for (std::size_t j = 1; j < k; ++j) {
            for (std::size_t a : members) {
              ext[mul(powers[j], a)] = static_cast<std::uint32_t>(
                  (j * f + chi[a]) % exponent);
            }
          }
          next.push_back(std::move(ext));
        }
      }
      chars = std::move(next);
      for (std::size_t x : new_members) {
        in_sub[x] = true;
      }
      members.insert(members.end(), new_members.begin(), new_members.end());
    }

    std::vector<Character> result;
    result.reserve(chars.size());
    for (auto const& chi : chars) {
      std::vector<std::uint32_t> values(n);
      for (std::size_t i = 0; i < n; ++i) {
        values[i] = chi[coset[i]];
      }
      result.emplace_back(group, conductor, std::move(values));
    }
    return result;
  }

}  // namespace collapse

#endif  // COLLAPSE_CHARACTER_HPP_

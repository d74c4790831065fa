#ifndef COLLAPSE_CONJUGATION_HPP_
#define COLLAPSE_CONJUGATION_HPP_

#include <cstddef>
#include <vector>

#include "group.hpp"
#include "rack.hpp"

namespace collapse {

  //! The permutation of class indices induced by conjugation with g.
  inline std::vector<RackIndex> conjugation_action(ConjugacyClass const& cls,
                                                   Permutation const& g) {
    std::vector<RackIndex> out(cls.size());
    for (std::size_t i = 0; i < cls.size(); ++i) {
      auto j = cls.index_of(g.conjugate(cls.members[i]));
      if (!j) {
        throw InputError("conjugation does not preserve the class");
      }
      out[i] = static_cast<RackIndex>(*j);
    }
    return out;
  }

  //! The rack on the sorted members of `cls` with x |> y = x y x^-1.
  //!
  //! Only the representative's row is computed by conjugation; every other
  //! row follows along a breadth-first tree from phi_{g x g^-1} =
  //! pi_g phi_x pi_g^-1, pi_g the action of a generator. O(n^2) total.
  inline Rack conjugation_rack(PermutationGroup const& group,
                               ConjugacyClass const& cls) {
    std::size_t const n = cls.size();
    std::vector<std::vector<RackIndex>> actions;
    for (auto const& g : group.generators()) {
      actions.push_back(conjugation_action(cls, g));
    }
    std::vector<RackIndex> table(n * n);
    std::vector<bool> done(n, false);
    {
      auto const& s = cls.members[0];
      for (std::size_t y = 0; y < n; ++y) {
        auto j = cls.index_of(s.conjugate(cls.members[y]));
        if (!j) {
          throw InputError("class is not closed under conjugation");
        }
        table[y] = static_cast<RackIndex>(*j);
      }
      done[0] = true;
    }
    std::vector<std::size_t> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::size_t const x = queue[head];
      for (auto const& pi : actions) {
        std::size_t const gx = pi[x];
        if (done[gx]) {
          continue;
        }
        done[gx] = true;
        queue.push_back(gx);
        RackIndex const* src = &table[x * n];
        RackIndex* dst = &table[gx * n];
        for (std::size_t y = 0; y < n; ++y) {
          dst[pi[y]] = pi[src[y]];
        }
      }
    }
    if (queue.size() != n) {
      throw InputError("class is not a single orbit under the generators");
    }
    return Rack::unchecked(n, std::move(table), cls.members);
  }

  //! The generator actions on a class, as rack automorphisms of its
  //! conjugation rack.
  inline std::vector<std::vector<RackIndex>>
  conjugation_automorphisms(PermutationGroup const& group,
                            ConjugacyClass const& cls) {
    std::vector<std::vector<RackIndex>> out;
    for (auto const& g : group.generators()) {
      out.push_back(conjugation_action(cls, g));
    }
    return out;
  }

  //! The rack of 4-cycles in S4 (six elements), built from the group.
  inline Rack octahedral_rack() {
    PermutationGroup s4 = generate_group(
        4, {parse_permutation("(1,2,3,4)", 4), parse_permutation("(1,2)", 4)});
    ClassTable table(s4);
    for (auto const& cls : table.classes()) {
      if (cls.element_order == 4) {
        return conjugation_rack(s4, cls);
      }
    }
    detail::invariant_failure("S4 has no class of 4-cycles");
    return Rack::unchecked(0, {});
  }

}  // namespace collapse

#endif  // COLLAPSE_CONJUGATION_HPP_

#ifndef COLLAPSE_GROUP_HPP_
#define COLLAPSE_GROUP_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "permutation.hpp"

namespace collapse {

  inline constexpr std::size_t kDefaultOrderCap = 200000;

  //! A finite permutation group held as its full sorted element list.
  //!
  //! Copies share the immutable element storage.
  class PermutationGroup {
   public:
    PermutationGroup() : PermutationGroup(1, {}, {Permutation(1)}) {}

    std::size_t degree() const noexcept {
      return data_->degree;
    }
    std::size_t order() const noexcept {
      return data_->elements.size();
    }
    std::span<Permutation const> generators() const noexcept {
      return data_->generators;
    }
    //! Sorted; the identity is always first.
    std::span<Permutation const> elements() const noexcept {
      return data_->elements;
    }
    Permutation const& element(std::size_t i) const {
      return data_->elements[i];
    }

    std::optional<std::size_t> index_of(Permutation const& p) const {
      auto const& e = data_->elements;
      if (p.degree() != data_->degree) {
        return std::nullopt;
      }
      auto it = std::lower_bound(e.begin(), e.end(), p);
      if (it == e.end() || *it != p) {
        return std::nullopt;
      }
      return static_cast<std::size_t>(it - e.begin());
    }

    bool contains(Permutation const& p) const {
      return index_of(p).has_value();
    }

    //! Index of a member; throws InputError for non-members.
    std::size_t index(Permutation const& p) const {
      auto i = index_of(p);
      if (!i) {
        throw InputError("element " + to_string(p) + " is not in the group");
      }
      return *i;
    }

    Permutation identity() const {
      return Permutation(data_->degree);
    }

    bool is_subgroup_of(PermutationGroup const& other) const {
      if (other.degree() != degree() || order() > other.order()
          || other.order() % order() != 0) {
        return false;
      }
      return std::all_of(data_->elements.begin(),
                         data_->elements.end(),
                         [&](Permutation const& p) { return other.contains(p); });
    }

    //! Wraps an already closed, sorted element list; a small generating set
    //! is picked greedily in element order.
    static PermutationGroup from_sorted_elements(std::size_t degree,
                                                 std::vector<Permutation> elts);

    //! Internal constructor used by the closure routines.
    PermutationGroup(std::size_t degree,
                     std::vector<Permutation> generators,
                     std::vector<Permutation> sorted_elements)
        : data_(std::make_shared<Data const>(Data{
            degree, std::move(generators), std::move(sorted_elements)})) {}

    friend bool operator==(PermutationGroup const& a,
                           PermutationGroup const& b) {
      return a.data_ == b.data_
             || (a.degree() == b.degree()
                 && a.data_->elements == b.data_->elements);
    }

   private:
    struct Data {
      std::size_t degree;
      std::vector<Permutation> generators;
      std::vector<Permutation> elements;
    };
    std::shared_ptr<Data const> data_;
  };

  namespace detail {
    // Breadth-first closure of {identity} under left multiplication by the
    // generators. Finite, so inverses come for free.
    inline std::vector<Permutation> closure(std::size_t degree,
                                            std::span<Permutation const> gens,
                                            std::size_t cap) {
      std::unordered_set<Permutation, PermutationHash> seen;
      std::vector<Permutation> elements;
      elements.push_back(Permutation(degree));
      seen.insert(elements.back());
      for (std::size_t head = 0; head < elements.size(); ++head) {
        for (auto const& g : gens) {
          Permutation next = g * elements[head];
          if (seen.insert(next).second) {
            if (elements.size() >= cap) {
              throw CapExceeded("group too large for desk scale: more than "
                                + std::to_string(cap) + " elements");
            }
            elements.push_back(std::move(next));
          }
        }
      }
      std::sort(elements.begin(), elements.end());
      return elements;
    }
  }  // namespace detail

  inline PermutationGroup
  PermutationGroup::from_sorted_elements(std::size_t degree,
                                         std::vector<Permutation> elts) {
    std::vector<Permutation> gens;
    std::vector<bool> covered(elts.size(), false);
    covered[0] = true;
    std::size_t covered_count = 1;
    auto locate = [&](Permutation const& p) -> std::size_t {
      auto it = std::lower_bound(elts.begin(), elts.end(), p);
      if (it == elts.end() || *it != p) {
        detail::invariant_failure("element list is not closed");
      }
      return static_cast<std::size_t>(it - elts.begin());
    };
    for (std::size_t i = 1; i < elts.size() && covered_count < elts.size();
         ++i) {
      if (covered[i]) {
        continue;
      }
      gens.push_back(elts[i]);
      // Re-close from scratch; at most log2(order) generators are added.
      std::fill(covered.begin(), covered.end(), false);
      std::vector<std::size_t> queue{0};
      covered[0] = true;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (auto const& g : gens) {
          std::size_t j = locate(g * elts[queue[head]]);
          if (!covered[j]) {
            covered[j] = true;
            queue.push_back(j);
          }
        }
      }
      covered_count = queue.size();
    }
    return PermutationGroup(degree, std::move(gens), std::move(elts));
  }

  //! Enumerates the group generated by `generators`; throws CapExceeded when
  //! more than `cap` elements appear.
  inline PermutationGroup generate_group(std::size_t degree,
                                         std::vector<Permutation> generators,
                                         std::size_t cap = kDefaultOrderCap) {
    for (auto const& g : generators) {
      if (g.degree() != degree) {
        throw InputError("generator " + to_string(g) + " has degree "
                         + std::to_string(g.degree()) + ", expected "
                         + std::to_string(degree));
      }
    }
    auto elements = detail::closure(degree, generators, cap);
    return PermutationGroup(degree, std::move(generators), std::move(elements));
  }

  inline PermutationGroup subgroup_generated(PermutationGroup const& group,
                                             std::vector<Permutation> elems,
                                             std::size_t cap
                                             = kDefaultOrderCap) {
    for (auto const& e : elems) {
      if (!group.contains(e)) {
        throw InputError("element " + to_string(e)
                         + " is not in the ambient group");
      }
    }
    return generate_group(group.degree(), std::move(elems), cap);
  }

  inline PermutationGroup centralizer(PermutationGroup const& group,
                                      Permutation const& s) {
    if (!group.contains(s)) {
      throw InputError("element " + to_string(s) + " is not in the group");
    }
    if (s.is_identity()) {
      return group;
    }
    std::vector<Permutation> elems;
    for (auto const& g : group.elements()) {
      if (g * s == s * g) {
        elems.push_back(g);
      }
    }
    return PermutationGroup::from_sorted_elements(group.degree(),
                                                  std::move(elems));
  }

  //! True iff h a h^-1 = b for some h in `group`; the search walks the orbit
  //! of `a` under conjugation by the generators.
  inline bool are_conjugate_in(PermutationGroup const& group,
                               Permutation const& a,
                               Permutation const& b) {
    if (!group.contains(a) || !group.contains(b)) {
      throw InputError("conjugacy test on elements outside the group");
    }
    if (a == b) {
      return true;
    }
    if (a.cycle_type() != b.cycle_type()) {
      return false;
    }
    std::unordered_set<Permutation, PermutationHash> seen{a};
    std::vector<Permutation> queue{a};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (auto const& g : group.generators()) {
        Permutation next = g.conjugate(queue[head]);
        if (next == b) {
          return true;
        }
        if (seen.insert(next).second) {
          queue.push_back(std::move(next));
        }
      }
    }
    return false;
  }

  struct ConjugacyClass {
    Permutation representative;  // the minimal member
    std::vector<Permutation> members;  // sorted
    std::uint64_t element_order = 1;
    std::string name;

    std::size_t size() const noexcept {
      return members.size();
    }

    std::optional<std::size_t> index_of(Permutation const& p) const {
      auto it = std::lower_bound(members.begin(), members.end(), p);
      if (it == members.end() || *it != p) {
        return std::nullopt;
      }
      return static_cast<std::size_t>(it - members.begin());
    }

    bool contains(Permutation const& p) const {
      return index_of(p).has_value();
    }
  };

  namespace detail {
    // "a", ..., "z", "aa", "ab", ...
    inline std::string class_letter(std::size_t i) {
      std::string s;
      ++i;
      while (i > 0) {
        --i;
        s.insert(s.begin(), static_cast<char>('a' + i % 26));
        i /= 26;
      }
      return s;
    }
  }  // namespace detail

  //! The conjugacy classes of a group together with the element-to-class map.
  //!
  //! Classes are sorted by (element order, size, minimal member) and named
  //! "<order><letter>" in that order. These labels are not ATLAS names.
  class ClassTable {
   public:
    ClassTable() = default;

    explicit ClassTable(PermutationGroup group) : group_(std::move(group)) {
      auto const elements = group_.elements();
      std::size_t const n = elements.size();
      std::vector<std::uint32_t> raw(n, kUnassigned);
      std::vector<std::vector<std::size_t>> orbits;
      for (std::size_t i = 0; i < n; ++i) {
        if (raw[i] != kUnassigned) {
          continue;
        }
        auto id = static_cast<std::uint32_t>(orbits.size());
        std::vector<std::size_t> orbit{i};
        raw[i] = id;
        for (std::size_t head = 0; head < orbit.size(); ++head) {
          for (auto const& g : group_.generators()) {
            std::size_t j = group_.index(g.conjugate(elements[orbit[head]]));
            if (raw[j] == kUnassigned) {
              raw[j] = id;
              orbit.push_back(j);
            }
          }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
      }

      std::vector<std::size_t> perm(orbits.size());
      std::vector<std::uint64_t> orders(orbits.size());
      for (std::size_t k = 0; k < orbits.size(); ++k) {
        perm[k] = k;
        orders[k] = elements[orbits[k].front()].order();
      }
      std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        if (orders[a] != orders[b]) {
          return orders[a] < orders[b];
        }
        if (orbits[a].size() != orbits[b].size()) {
          return orbits[a].size() < orbits[b].size();
        }
        return orbits[a].front() < orbits[b].front();
      });

      std::vector<std::uint32_t> renumber(orbits.size());
      std::size_t letter = 0;
      for (std::size_t pos = 0; pos < perm.size(); ++pos) {
        std::size_t k = perm[pos];
        renumber[k] = static_cast<std::uint32_t>(pos);
        if (pos > 0 && orders[perm[pos - 1]] != orders[k]) {
          letter = 0;
        }
        ConjugacyClass cls;
        cls.members.reserve(orbits[k].size());
        for (std::size_t j : orbits[k]) {
          cls.members.push_back(elements[j]);
        }
        cls.representative = cls.members.front();
        cls.element_order = orders[k];
        cls.name = std::to_string(orders[k]) + detail::class_letter(letter++);
        classes_.push_back(std::move(cls));
      }
      class_of_.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        class_of_[i] = renumber[raw[i]];
      }
    }

    PermutationGroup const& group() const noexcept {
      return group_;
    }
    std::span<ConjugacyClass const> classes() const noexcept {
      return classes_;
    }
    ConjugacyClass const& operator[](std::size_t i) const {
      return classes_.at(i);
    }
    std::size_t size() const noexcept {
      return classes_.size();
    }

    std::size_t class_index_of(Permutation const& p) const {
      return class_of_[group_.index(p)];
    }

    std::size_t class_index_of_element(std::size_t element_index) const {
      return class_of_[element_index];
    }

    std::optional<std::size_t> find(std::string_view name) const {
      for (std::size_t i = 0; i < classes_.size(); ++i) {
        if (classes_[i].name == name) {
          return i;
        }
      }
      return std::nullopt;
    }

    //! Index of the class containing representative^m.
    std::size_t power_class(std::size_t cls, long long m) const {
      return class_index_of(classes_.at(cls).representative.pow(m));
    }

   private:
    static constexpr std::uint32_t kUnassigned = 0xffffffffu;
    PermutationGroup group_;
    std::vector<ConjugacyClass> classes_;
    std::vector<std::uint32_t> class_of_;
  };

  inline ClassTable conjugacy_classes(PermutationGroup const& group) {
    return ClassTable(group);
  }

  inline ConjugacyClass const& power_class(ClassTable const& table,
                                           ConjugacyClass const& cls,
                                           long long m) {
    if (m < 1) {
      throw InputError("power_class expects m >= 1");
    }
    return table[table.power_class(table.class_index_of(cls.representative),
                                   m)];
  }

}  // namespace collapse

#endif  // COLLAPSE_GROUP_HPP_

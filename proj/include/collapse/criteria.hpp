#ifndef COLLAPSE_CRITERIA_HPP_
#define COLLAPSE_CRITERIA_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "braiding.hpp"
#include "character.hpp"
#include "cocycle.hpp"
#include "conjugation.hpp"
#include "error.hpp"
#include "group.hpp"
#include "nichols.hpp"
#include "rack.hpp"

namespace collapse {

  // ---------------------------------------------------------------------
  // Reality

  inline bool is_real(ConjugacyClass const& cls) {
    return cls.contains(cls.representative.inverse());
  }

  //! All m with 1 < m < N and rep^m in the class, N the element order.
  inline std::vector<std::uint64_t> quasireal_exponents(ConjugacyClass const& cls) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 2; m < cls.element_order; ++m) {
      if (cls.contains(cls.representative.pow(static_cast<long long>(m)))) {
        out.push_back(m);
      }
    }
    return out;
  }

  // ---------------------------------------------------------------------
  // Type D

  //! r, s in distinct inner components R, S of the subrack they generate,
  //! with r |> (s |> (r |> s)) != s. `subrack` is sorted; R and S are its
  //! components containing r and s.
  struct TypeDWitness {
    RackIndex r = 0;
    RackIndex s = 0;
    std::optional<Permutation> r_element;
    std::optional<Permutation> s_element;
    std::vector<RackIndex> subrack;
    std::vector<RackIndex> component_r;
    std::vector<RackIndex> component_s;
  };

  struct TypeDResult {
    std::optional<TypeDWitness> witness;
    bool complete = true;
    std::size_t unresolved_pairs = 0;
  };

  namespace detail {
    // Inner components of the induced subrack on `sub`, as parent indices.
    inline std::vector<std::vector<RackIndex>>
    sub_components(Rack const& rack, std::vector<RackIndex> const& sub) {
      Rack z = induced_rack(rack, sub);
      std::vector<std::vector<RackIndex>> out;
      for (auto const& comp : inner_components(z)) {
        std::vector<RackIndex> c;
        for (RackIndex i : comp) {
          c.push_back(sub[i]);
        }
        out.push_back(std::move(c));
      }
      return out;
    }
  }  // namespace detail

  //! Exhaustive pair search in lexicographic order of (r, s).
  inline TypeDResult is_type_D_rack(Rack const& x) {
    TypeDResult res;
    std::size_t const n = x.size();
    for (RackIndex r = 0; r < n; ++r) {
      for (RackIndex s = 0; s < n; ++s) {
        if (x(r, x(s, x(r, s))) == s) {
          continue;
        }
        RackIndex const seed[2] = {r, s};
        SubrackHandle z = subrack_generated(x, seed);
        auto comps = detail::sub_components(x, z.indices);
        std::size_t cr = comps.size();
        std::size_t cs = comps.size();
        for (std::size_t i = 0; i < comps.size(); ++i) {
          if (std::binary_search(comps[i].begin(), comps[i].end(), r)) {
            cr = i;
          }
          if (std::binary_search(comps[i].begin(), comps[i].end(), s)) {
            cs = i;
          }
        }
        if (cr == cs) {
          continue;
        }
        TypeDWitness w;
        w.r = r;
        w.s = s;
        if (x.has_labels()) {
          w.r_element = x.labels()[r];
          w.s_element = x.labels()[s];
        }
        w.subrack = std::move(z.indices);
        w.component_r = comps[cr];
        w.component_s = comps[cs];
        res.witness = std::move(w);
        return res;
      }
    }
    return res;
  }

  namespace detail {
    // Orbit of `a` under conjugation by the group generated by `gens`,
    // or empty if it exceeds `cap`.
    inline std::vector<Permutation> conjugation_orbit(Permutation const& a,
                                                      std::span<Permutation const> gens,
                                                      std::size_t cap) {
      std::unordered_set<Permutation, PermutationHash> seen{a};
      std::vector<Permutation> orbit{a};
      for (std::size_t h = 0; h < orbit.size(); ++h) {
        for (auto const& g : gens) {
          Permutation b = g.conjugate(orbit[h]);
          if (seen.insert(b).second) {
            orbit.push_back(std::move(b));
            if (orbit.size() > cap) {
              return {};
            }
          }
        }
      }
      std::sort(orbit.begin(), orbit.end());
      return orbit;
    }
  }  // namespace detail

  //! Class-level search: (r, s) is a witness iff (rs)^2 s (rs)^-2 != s and
  //! r, s are not conjugate in <r, s>. Conjugating any witness by G moves r
  //! to the minimal member, so r is fixed there, and s runs over the least
  //! members of the centralizer orbits in increasing order. The first hit is
  //! the lexicographically smallest witness. <r, s> is never enumerated:
  //! conjugacy is read off the orbit of r under conjugation by r and s.
  inline TypeDResult is_type_D_class(PermutationGroup const& group,
                                     ConjugacyClass const& cls,
                                     std::size_t subgroup_cap = kDefaultOrderCap) {
    TypeDResult res;
    std::size_t const n = cls.size();
    if (n < 2) {
      return res;
    }
    Permutation const& r = cls.members[0];
    PermutationGroup const cent = centralizer(group, r);
    std::vector<std::vector<RackIndex>> actions;
    for (auto const& g : cent.generators()) {
      actions.push_back(conjugation_action(cls, g));
    }
    // least member of each centralizer orbit
    std::vector<bool> is_least(n, false);
    std::vector<bool> seen(n, false);
    for (std::size_t y = 0; y < n; ++y) {
      if (seen[y]) {
        continue;
      }
      is_least[y] = true;
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

    for (std::size_t si = 1; si < n; ++si) {
      if (!is_least[si]) {
        continue;
      }
      Permutation const& s = cls.members[si];
      Permutation const rs = r * s;
      Permutation const rs2 = rs * rs;
      if (rs2.conjugate(s) == s) {
        continue;
      }
      Permutation const gens[2] = {r, s};
      auto orbit_r = detail::conjugation_orbit(r, gens, subgroup_cap);
      if (orbit_r.empty()) {
        ++res.unresolved_pairs;
        res.complete = false;
        continue;
      }
      if (std::binary_search(orbit_r.begin(), orbit_r.end(), s)) {
        continue;
      }
      auto orbit_s = detail::conjugation_orbit(s, gens, subgroup_cap);
      if (orbit_s.empty()) {
        ++res.unresolved_pairs;
        res.complete = false;
        continue;
      }
      TypeDWitness w;
      w.r = 0;
      w.s = static_cast<RackIndex>(si);
      w.r_element = r;
      w.s_element = s;
      for (auto const& p : orbit_r) {
        w.component_r.push_back(static_cast<RackIndex>(*cls.index_of(p)));
      }
      for (auto const& p : orbit_s) {
        w.component_s.push_back(static_cast<RackIndex>(*cls.index_of(p)));
      }
      w.subrack = w.component_r;
      w.subrack.insert(w.subrack.end(), w.component_s.begin(), w.component_s.end());
      std::sort(w.subrack.begin(), w.subrack.end());
      res.witness = std::move(w);
      // complete stays false if an earlier pair was unresolved
      return res;
    }
    return res;
  }

  // ---------------------------------------------------------------------
  // Abelian subracks

  namespace detail {
    // Bron-Kerbosch with pivoting on an adjacency matrix; cliques are
    // emitted sorted, in discovery order. Recursion stops at `max_size`.
    class CliqueSearch {
     public:
      CliqueSearch(std::vector<std::vector<bool>> adj,
                   std::size_t max_size,
                   std::size_t limit)
          : adj_(std::move(adj)), max_size_(max_size), limit_(limit) {}

      std::vector<std::vector<std::size_t>> run() {
        std::vector<std::size_t> p(adj_.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
          p[i] = i;
        }
        std::vector<std::size_t> r;
        expand(r, p, {});
        return std::move(out_);
      }

      bool truncated() const noexcept {
        return truncated_;
      }

     private:
      void expand(std::vector<std::size_t>& r,
                  std::vector<std::size_t> p,
                  std::vector<std::size_t> x) {
        if (out_.size() >= limit_) {
          truncated_ = true;
          return;
        }
        if ((p.empty() && x.empty()) || r.size() >= max_size_) {
          auto c = r;
          std::sort(c.begin(), c.end());
          out_.push_back(std::move(c));
          return;
        }
        if (p.empty()) {
          return;
        }
        // pivot: first vertex of P then X with most neighbours in P
        std::size_t pivot = p.front();
        std::size_t best = 0;
        bool have = false;
        for (auto const* set : {&p, &x}) {
          for (std::size_t u : *set) {
            std::size_t k = 0;
            for (std::size_t v : p) {
              k += adj_[u][v] ? 1 : 0;
            }
            if (!have || k > best) {
              have = true;
              best = k;
              pivot = u;
            }
          }
        }
        std::vector<std::size_t> cand;
        for (std::size_t v : p) {
          if (!adj_[pivot][v]) {
            cand.push_back(v);
          }
        }
        for (std::size_t v : cand) {
          std::vector<std::size_t> np;
          std::vector<std::size_t> nx;
          for (std::size_t u : p) {
            if (adj_[v][u]) {
              np.push_back(u);
            }
          }
          for (std::size_t u : x) {
            if (adj_[v][u]) {
              nx.push_back(u);
            }
          }
          r.push_back(v);
          expand(r, std::move(np), std::move(nx));
          r.pop_back();
          std::erase(p, v);
          x.push_back(v);
          if (out_.size() >= limit_) {
            truncated_ = true;
            return;
          }
        }
      }

      std::vector<std::vector<bool>> adj_;
      std::size_t max_size_;
      std::size_t limit_;
      std::vector<std::vector<std::size_t>> out_;
      bool truncated_ = false;
    };

    inline bool commute_in(Rack const& x, std::size_t a, std::size_t b) {
      return x(a, b) == b && x(b, a) == a;
    }

    inline std::vector<SubrackHandle>
    cliques_to_handles(Rack const& x,
                       std::vector<std::size_t> const& vertices,
                       std::vector<std::vector<std::size_t>> cliques,
                       std::optional<RackIndex> extra) {
      std::vector<SubrackHandle> out;
      for (auto const& c : cliques) {
        SubrackHandle h{&x, {}};
        for (std::size_t i : c) {
          h.indices.push_back(static_cast<RackIndex>(vertices[i]));
        }
        if (extra) {
          h.indices.push_back(*extra);
        }
        std::sort(h.indices.begin(), h.indices.end());
        out.push_back(std::move(h));
      }
      std::sort(out.begin(), out.end(),
                [](SubrackHandle const& a, SubrackHandle const& b) {
                  return a.indices < b.indices;
                });
      return out;
    }
  }  // namespace detail

  inline constexpr std::size_t kDefaultAbelianMaxSize = 8;
  inline constexpr std::size_t kDefaultAbelianLimit = 16;

  //! Maximal sets of idempotent indices that pairwise commute (x |> y = y,
  //! y |> x = x); sets reaching `max_size` are reported without growing
  //! further. At most `limit` results, sorted.
  inline std::vector<SubrackHandle>
  find_abelian_subracks(Rack const& x,
                        std::size_t max_size = kDefaultAbelianMaxSize,
                        std::size_t limit = kDefaultAbelianLimit) {
    if (max_size == 0) {
      throw InputError("max_size must be at least 1");
    }
    std::vector<std::size_t> vertices;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x(i, i) == i) {
        vertices.push_back(i);
      }
    }
    std::vector<std::vector<bool>> adj(vertices.size(),
                                       std::vector<bool>(vertices.size(), false));
    for (std::size_t a = 0; a < vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < vertices.size(); ++b) {
        bool c = detail::commute_in(x, vertices[a], vertices[b]);
        adj[a][b] = adj[b][a] = c;
      }
    }
    detail::CliqueSearch search(std::move(adj), max_size, limit);
    return detail::cliques_to_handles(x, vertices, search.run(), std::nullopt);
  }

  //! As find_abelian_subracks, restricted to sets containing `s`.
  inline std::vector<SubrackHandle>
  find_abelian_subracks_containing(Rack const& x,
                                   RackIndex s,
                                   std::size_t max_size = kDefaultAbelianMaxSize,
                                   std::size_t limit = kDefaultAbelianLimit) {
    if (max_size == 0) {
      throw InputError("max_size must be at least 1");
    }
    if (x(s, s) != s) {
      return {};
    }
    std::vector<std::size_t> vertices;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i != s && x(i, i) == i && detail::commute_in(x, s, i)) {
        vertices.push_back(i);
      }
    }
    std::vector<std::vector<bool>> adj(vertices.size(),
                                       std::vector<bool>(vertices.size(), false));
    for (std::size_t a = 0; a < vertices.size(); ++a) {
      for (std::size_t b = a + 1; b < vertices.size(); ++b) {
        bool c = detail::commute_in(x, vertices[a], vertices[b]);
        adj[a][b] = adj[b][a] = c;
      }
    }
    detail::CliqueSearch search(std::move(adj), max_size - 1, limit);
    return detail::cliques_to_handles(x, vertices, search.run(), s);
  }

  // ---------------------------------------------------------------------
  // Doubles

  struct DoubleTemplate {
    std::string name;
    Rack rack;
  };

  inline std::vector<DoubleTemplate>
  double_templates(std::span<std::size_t const> p_range) {
    std::vector<DoubleTemplate> out;
    for (std::size_t p : p_range) {
      out.push_back({"D" + std::to_string(p) + "^(2)",
                     double_rack(dihedral_rack(p))});
    }
    out.push_back({"O^(2)", double_rack(octahedral_rack())});
    return out;
  }

  inline constexpr std::size_t kDefaultDoublePrimes[] = {3, 5, 7, 11};

  struct DoubleFinding {
    std::string template_name;
    SubrackHandle subrack;
    std::vector<RackIndex> embedding;  // template index -> parent index
  };

  //! Subracks isomorphic to a double of D_p (p in p_range) or of O, seeded
  //! by pairs whose generated subrack splits into two equal inner
  //! components. Structural findings only.
  inline std::vector<DoubleFinding>
  detect_double_subracks(Rack const& x,
                         std::span<std::size_t const> p_range
                         = kDefaultDoublePrimes) {
    auto templates = double_templates(p_range);
    std::vector<DoubleFinding> out;
    std::set<std::vector<RackIndex>> done;
    std::size_t const n = x.size();
    for (RackIndex r = 0; r < n; ++r) {
      for (RackIndex s = r + 1; s < n; ++s) {
        RackIndex const seed[2] = {r, s};
        SubrackHandle z = subrack_generated(x, seed);
        if (done.count(z.indices)) {
          continue;
        }
        done.insert(z.indices);
        auto comps = detail::sub_components(x, z.indices);
        if (comps.size() != 2 || comps[0].size() != comps[1].size()) {
          continue;
        }
        Rack const zr = induced_rack(x, z.indices);
        for (auto const& t : templates) {
          if (t.rack.size() != zr.size()) {
            continue;
          }
          if (auto iso = are_isomorphic(t.rack, zr)) {
            DoubleFinding f{t.name, z, {}};
            for (RackIndex i : *iso) {
              f.embedding.push_back(z.indices[i]);
            }
            out.push_back(std::move(f));
            break;
          }
        }
      }
    }
    std::sort(out.begin(), out.end(), [](auto const& a, auto const& b) {
      return a.subrack.indices < b.subrack.indices;
    });
    return out;
  }

  // ---------------------------------------------------------------------
  // Subgroups

  //! The F-classes partitioning cls n F, in F's class order.
  inline std::vector<ConjugacyClass>
  restrict_class_to_subgroup(PermutationGroup const& group,
                             PermutationGroup const& sub,
                             ConjugacyClass const& cls) {
    if (!sub.is_subgroup_of(group)) {
      throw InputError("not a subgroup of the ambient group");
    }
    ClassTable table(sub);
    std::vector<ConjugacyClass> out;
    for (auto const& c : table.classes()) {
      if (cls.contains(c.representative)) {
        out.push_back(c);
      }
    }
    return out;
  }

  // ---------------------------------------------------------------------
  // Reports

  enum class Verdict { Collapses, CollapsesDim1, Unknown };

  inline char const* to_string(Verdict v) {
    switch (v) {
      case Verdict::Collapses:
        return "Collapses";
      case Verdict::CollapsesDim1:
        return "CollapsesDim1";
      case Verdict::Unknown:
        return "Unknown";
    }
    return "Unknown";
  }

  namespace reason {
    inline constexpr char const* kTypeD = "TYPE_D";
    inline constexpr char const* kQxxOneAllLinear = "QXX_ONE_ALL_LINEAR";
    inline constexpr char const* kFiniteHilbert = "FINITE_HILBERT";
    inline constexpr char const* kTruncatedProbe = "TRUNCATED_PROBE";
    inline constexpr char const* kUnresolvedPairs = "UNRESOLVED_PAIRS";
    inline constexpr char const* kDoubleSubrackFound = "DOUBLE_SUBRACK_FOUND";
    inline constexpr char const* kAbelianSubrackFound = "ABELIAN_SUBRACK_FOUND";
  }  // namespace reason

  struct CharacterEvidence {
    std::size_t index = 0;
    std::uint32_t conductor = 1;
    RootOfUnity value_at_basepoint;  // = q_xx for every x
    bool qxx_one = false;
  };

  struct AbelianFinding {
    std::vector<RackIndex> indices;
    //! per character, row-major matrix of q on the finding
    std::vector<DiagonalBraiding<RootOfUnity>> diagonal;
  };

  struct HilbertProbe {
    std::size_t character = 0;
    GradedDims dims;
  };

  struct ClassReport {
    std::string name;
    std::size_t size = 0;
    std::uint64_t element_order = 1;
    Permutation representative;
    std::size_t centralizer_order = 0;
    bool real = false;
    std::vector<std::uint64_t> quasireal;
    TypeDResult type_d;
    std::vector<CharacterEvidence> characters;
    std::vector<AbelianFinding> abelian_findings;
    bool double_search_run = false;
    std::vector<DoubleFinding> double_findings;
    std::vector<HilbertProbe> hilbert_probes;
    std::vector<std::string> annotations;
    Verdict verdict = Verdict::Unknown;
    std::vector<std::string> reasons;
    std::shared_ptr<Rack const> rack;  // owner of the findings' indices
  };

  struct AnalyzeOptions {
    std::size_t subgroup_cap = kDefaultOrderCap;
    std::size_t row_cap = kDefaultRowCap;
    std::uint64_t work_cap = kDefaultWorkCap;
    std::size_t max_degree = 12;
    bool probe_hilbert = true;
    std::size_t abelian_max_size = kDefaultAbelianMaxSize;
    std::size_t abelian_limit = kDefaultAbelianLimit;
    std::size_t double_class_limit = 64;
    std::size_t threads = 1;
  };

  //! Precedence fold: type D, then the q_xx = 1 rule over all linear
  //! characters (nontrivial classes only), then Unknown. Adding evidence
  //! can only move the result up this list.
  inline Verdict assemble_verdict(bool type_d,
                                  std::uint64_t element_order,
                                  std::span<CharacterEvidence const> chars) {
    if (type_d) {
      return Verdict::Collapses;
    }
    if (element_order > 1 && !chars.empty()
        && std::all_of(chars.begin(), chars.end(),
                       [](auto const& c) { return c.qxx_one; })) {
      return Verdict::CollapsesDim1;
    }
    return Verdict::Unknown;
  }

  inline ClassReport analyze_class(PermutationGroup const& group,
                                   ConjugacyClass const& cls,
                                   AnalyzeOptions const& opts = {}) {
    ClassReport rep;
    rep.name = cls.name;
    rep.size = cls.size();
    rep.element_order = cls.element_order;
    rep.representative = cls.representative;
    rep.real = is_real(cls);
    rep.quasireal = quasireal_exponents(cls);

    try {
      rep.type_d = is_type_D_class(group, cls, opts.subgroup_cap);
    } catch (CapExceeded const& e) {
      rep.type_d.complete = false;
      rep.annotations.push_back(std::string("type D search: ") + e.what());
    }

    std::optional<ClassSections> sections;
    std::vector<Character> chars;
    std::vector<UnitCocycle> cocycles;
    try {
      sections.emplace(group, cls, cls.representative);
      rep.centralizer_order = sections->centralizer_group().order();
      chars = linear_characters(sections->centralizer_group());
      rep.rack = std::make_shared<Rack const>(conjugation_rack(group, cls));
      for (std::size_t i = 0; i < chars.size(); ++i) {
        cocycles.push_back(cocycle_from_character(*sections, rep.rack, chars[i]));
        CharacterEvidence ev;
        ev.index = i;
        ev.conductor = chars[i].conductor();
        ev.value_at_basepoint = chars[i].value(cls.representative);
        ev.qxx_one = ev.value_at_basepoint.is_one();
        rep.characters.push_back(ev);
      }
    } catch (CapExceeded const& e) {
      rep.annotations.push_back(std::string("cocycles: ") + e.what());
    }

    if (rep.rack) {
      try {
        auto found = find_abelian_subracks_containing(
            *rep.rack, 0, opts.abelian_max_size, opts.abelian_limit);
        for (auto const& h : found) {
          AbelianFinding f;
          f.indices = h.indices;
          for (auto const& q : cocycles) {
            f.diagonal.push_back(diagonal_from_abelian(h, q));
          }
          rep.abelian_findings.push_back(std::move(f));
        }
      } catch (CapExceeded const& e) {
        rep.annotations.push_back(std::string("abelian subracks: ") + e.what());
      }

      if (rep.size <= opts.double_class_limit) {
        rep.double_search_run = true;
        rep.double_findings = detect_double_subracks(*rep.rack);
      } else {
        rep.annotations.push_back("double subrack search skipped: class size "
                                  + std::to_string(rep.size) + " > "
                                  + std::to_string(opts.double_class_limit));
      }

      if (opts.probe_hilbert) {
        NicholsOptions nopts;
        nopts.max_degree = opts.max_degree;
        nopts.row_cap = opts.row_cap;
        nopts.work_cap = opts.work_cap;
        for (std::size_t i = 0; i < cocycles.size(); ++i) {
          HilbertProbe probe;
          probe.character = i;
          if (rep.size > 0 && rep.size <= opts.row_cap / rep.size) {
            probe.dims = hilbert_prefix(BraidedSpace(cocycles[i]), nopts);
          } else {
            probe.dims.dims = {1, rep.size};
            probe.dims.max_degree = opts.max_degree;
            probe.dims.row_cap = opts.row_cap;
            probe.dims.work_cap = opts.work_cap;
            probe.dims.truncated_by = "rows";
          }
          rep.hilbert_probes.push_back(std::move(probe));
        }
      }
    }

    rep.verdict = assemble_verdict(rep.type_d.witness.has_value(),
                                   rep.element_order, rep.characters);
    if (rep.type_d.witness) {
      rep.reasons.push_back(reason::kTypeD);
    }
    if (rep.verdict == Verdict::CollapsesDim1) {
      rep.reasons.push_back(reason::kQxxOneAllLinear);
    }
    if (!rep.type_d.complete) {
      rep.reasons.push_back(reason::kUnresolvedPairs);
    }
    if (!rep.abelian_findings.empty()) {
      rep.reasons.push_back(reason::kAbelianSubrackFound);
    }
    if (!rep.double_findings.empty()) {
      rep.reasons.push_back(reason::kDoubleSubrackFound);
    }
    bool finite = false;
    bool truncated = false;
    for (auto const& p : rep.hilbert_probes) {
      (p.dims.status == SeriesStatus::Complete ? finite : truncated) = true;
    }
    if (finite) {
      rep.reasons.push_back(reason::kFiniteHilbert);
    }
    if (truncated) {
      rep.reasons.push_back(reason::kTruncatedProbe);
    }
    return rep;
  }

  enum class Summary { AllClassesCollapse, Partial };

  inline char const* to_string(Summary s) {
    return s == Summary::AllClassesCollapse ? "AllClassesCollapse" : "Partial";
  }

  struct GroupReport {
    std::string group_name;
    PermutationGroup group;
    std::vector<ClassReport> classes;
    Summary summary = Summary::Partial;
    std::vector<std::string> caveats;
  };

  inline constexpr char const* kQxxLemma
      = "external lemma: if q_xx = 1 then e_x spans a braided subspace with "
        "trivial braiding, which generates a polynomial subalgebra, so the "
        "Nichols algebra is infinite-dimensional";

  inline GroupReport analyze_group(PermutationGroup const& group,
                                   std::string name,
                                   AnalyzeOptions const& opts = {}) {
    GroupReport out;
    out.group_name = std::move(name);
    out.group = group;
    ClassTable const table(group);
    std::size_t const k = table.size();
    out.classes.resize(k);

    std::size_t const workers = std::max<std::size_t>(
        1, std::min<std::size_t>(opts.threads, k));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(k);
    auto work = [&] {
      for (std::size_t i = next++; i < k; i = next++) {
        try {
          out.classes[i] = analyze_class(group, table[i], opts);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) {
      pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
      t.join();
    }
    for (auto const& e : errors) {
      if (e) {
        std::rethrow_exception(e);
      }
    }

    bool all = std::all_of(out.classes.begin(), out.classes.end(),
                           [](auto const& c) {
                             return c.verdict == Verdict::Collapses;
                           });
    out.summary = all ? Summary::AllClassesCollapse : Summary::Partial;
    std::vector<std::string> untested;
    for (auto const& c : out.classes) {
      if (c.verdict != Verdict::Collapses) {
        untested.push_back(c.name);
      }
    }
    if (!untested.empty()) {
      std::string s = "representations of dimension > 1 are untested for classes";
      for (auto const& u : untested) {
        s += " " + u;
      }
      out.caveats.push_back(std::move(s));
    }
    out.caveats.push_back("class labels are order+letter by size then minimal "
                          "member, not ATLAS names");
    out.caveats.push_back(kQxxLemma);
    return out;
  }

}  // namespace collapse

#endif  // COLLAPSE_CRITERIA_HPP_

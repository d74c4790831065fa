#include <algorithm>
#include <map>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace collapse;

namespace {

  PermutationGroup fixture(std::string const& name) {
    return build_group(*find_fixture(name));
  }

  Permutation P(std::string const& s, std::size_t n) {
    return parse_permutation(s, n);
  }

  // Closure of a set of permutations under products, by brute force.
  std::set<Permutation> closure(std::vector<Permutation> gens, std::size_t n) {
    std::set<Permutation> out{Permutation::identity(n)};
    std::vector<Permutation> frontier{Permutation::identity(n)};
    while (!frontier.empty()) {
      std::vector<Permutation> next;
      for (auto const& a : frontier) {
        for (auto const& g : gens) {
          auto p = a * g;
          if (out.insert(p).second) {
            next.push_back(p);
          }
        }
      }
      frontier = std::move(next);
    }
    return out;
  }

  std::size_t abelianization_oracle(PermutationGroup const& g) {
    std::vector<Permutation> comms;
    for (auto const& a : g.elements()) {
      for (auto const& b : g.elements()) {
        comms.push_back(a * b * a.inverse() * b.inverse());
      }
    }
    std::sort(comms.begin(), comms.end());
    comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
    return g.order() / closure(comms, g.degree()).size();
  }

}  // namespace

TEST(Permutation, ParsesCycleNotation) {
  auto p = P("(1,2,3)", 3);
  EXPECT_EQ(p(0), 1);
  EXPECT_EQ(p(1), 2);
  EXPECT_EQ(p(2), 0);
  EXPECT_TRUE(P("()", 4).is_identity());
  EXPECT_TRUE(P("", 2).is_identity());
  auto q = P("(1,2)(3,4)", 5);
  EXPECT_EQ(q(4), 4);
  EXPECT_EQ(q.order(), 2u);
  EXPECT_EQ(P("(1,2,3)(4,5)", 5).order(), 6u);
}

TEST(Permutation, RejectsMalformedCycles) {
  EXPECT_THROW(P("(1,1)", 3), InputError);
  EXPECT_THROW(P("(0,2)", 3), InputError);
  EXPECT_THROW(P("(1,4)", 3), InputError);
  EXPECT_THROW(P("(1,2", 3), InputError);
  EXPECT_THROW(P("(1,2)(2,3)", 3), InputError);
  EXPECT_THROW(P("(a,b)", 3), InputError);
}

TEST(Permutation, ToStringRoundTrips) {
  std::mt19937 rng(7);
  for (int k = 0; k < 200; ++k) {
    std::vector<Point> v(9);
    std::iota(v.begin(), v.end(), Point{0});
    std::shuffle(v.begin(), v.end(), rng);
    auto p = Permutation::from_images(v);
    EXPECT_EQ(P(to_string(p), 9), p);
  }
}

TEST(Permutation, ProductAppliesRightFactorFirst) {
  auto a = P("(1,2)", 3);
  auto b = P("(2,3)", 3);
  EXPECT_EQ((a * b)(1), 2);  // b sends 2 to 3, then a fixes 3
  EXPECT_EQ((b * a)(1), 0);  // a sends 2 to 1, then b fixes 1
  EXPECT_EQ((b * a)(0), 2);  // a sends 1 to 2, then b sends 2 to 3
  EXPECT_EQ(a.conjugate(b), a * b * a.inverse());
  EXPECT_EQ(a.pow(-1), a.inverse());
  EXPECT_EQ(P("(1,2,3,4,5)", 5).pow(5), Permutation::identity(5));
}

TEST(Group, FixtureOrdersByEnumeration) {
  std::map<std::string, std::size_t> expected{
      {"trivial", 1}, {"S3", 6},  {"S4", 24},  {"S5", 120},  {"S6", 720},
      {"A4", 12},     {"A5", 60}, {"A6", 360}, {"D3", 6},    {"D5", 10},
      {"D7", 14},     {"D11", 22}, {"M11", 7920}, {"M12", 95040}};
  for (auto const& f : fixtures()) {
    EXPECT_EQ(build_group(f).order(), expected.at(f.name)) << f.name;
  }
}

TEST(Group, SmallGroupsMatchBruteForceClosure) {
  for (auto name : {"S3", "S4", "A4", "A5", "D5", "D7"}) {
    auto g = fixture(name);
    auto c = closure({g.generators().begin(), g.generators().end()}, g.degree());
    ASSERT_EQ(c.size(), g.order()) << name;
    EXPECT_TRUE(std::equal(c.begin(), c.end(), g.elements().begin())) << name;
  }
}

TEST(Group, CapIsAHardError) {
  EXPECT_THROW(build_group(*find_fixture("M12"), 1000), CapExceeded);
  auto s5 = fixture("S5");
  EXPECT_THROW(subgroup_generated(s5, {P("(1,2,3,4,5)", 5), P("(1,2)", 5)}, 50),
               CapExceeded);
  EXPECT_EQ(subgroup_generated(s5, {P("(1,2,3)", 5)}).order(), 3u);
  EXPECT_THROW(subgroup_generated(s5, {P("(1,2,3)", 6)}), InputError);
}

TEST(Group, ClassEquationAndOrbitStabilizer) {
  for (auto const& f : fixtures()) {
    if (f.name == "M12") {
      continue;  // covered by the acceptance run
    }
    auto g = build_group(f);
    ClassTable t(g);
    std::size_t total = 0;
    for (auto const& c : t.classes()) {
      total += c.size();
      EXPECT_EQ(centralizer(g, c.representative).order() * c.size(), g.order())
          << f.name << " " << c.name;
      EXPECT_EQ(c.representative, c.members.front());
      EXPECT_TRUE(std::is_sorted(c.members.begin(), c.members.end()));
      EXPECT_EQ(c.element_order, c.representative.order());
    }
    EXPECT_EQ(total, g.order()) << f.name;
  }
}

TEST(Group, ClassesMatchBruteForcePartition) {
  for (auto name : {"S4", "S5", "A5", "D7"}) {
    auto g = fixture(name);
    std::set<std::set<Permutation>> brute;
    for (auto const& x : g.elements()) {
      std::set<Permutation> cls;
      for (auto const& h : g.elements()) {
        cls.insert(h.conjugate(x));
      }
      brute.insert(cls);
    }
    ClassTable t(g);
    std::set<std::set<Permutation>> lib;
    for (auto const& c : t.classes()) {
      lib.insert({c.members.begin(), c.members.end()});
    }
    EXPECT_EQ(lib, brute) << name;
  }
}

TEST(Group, S4ClassTable) {
  ClassTable t(fixture("S4"));
  ASSERT_EQ(t.size(), 5u);
  std::vector<std::string> names;
  std::vector<std::size_t> sizes;
  for (auto const& c : t.classes()) {
    names.push_back(c.name);
    sizes.push_back(c.size());
  }
  EXPECT_EQ(names, (std::vector<std::string>{"1a", "2a", "2b", "3a", "4a"}));
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 3, 6, 8, 6}));
  EXPECT_TRUE(t.find("3a").has_value());
  EXPECT_FALSE(t.find("5a").has_value());
}

TEST(Group, M11ClassSizes) {
  ClassTable t(fixture("M11"));
  std::vector<std::size_t> sizes;
  for (auto const& c : t.classes()) {
    sizes.push_back(c.size());
  }
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 165, 440, 990, 1584, 1320, 990,
                                             990, 720, 720}));
}

TEST(Group, CentralizerExamples) {
  auto s4 = fixture("S4");
  EXPECT_EQ(centralizer(s4, P("(1,2)", 4)).order(), 4u);
  EXPECT_EQ(centralizer(s4, P("(1,2,3,4)", 4)).order(), 4u);
  EXPECT_EQ(centralizer(s4, P("(1,2)(3,4)", 4)).order(), 8u);
  EXPECT_EQ(centralizer(s4, Permutation::identity(4)).order(), 24u);
  EXPECT_EQ(centralizer(fixture("A4"), P("(1,2,3)", 4)).order(), 3u);
  EXPECT_THROW(centralizer(fixture("A4"), P("(1,2)", 4)), InputError);
}

TEST(Group, ConjugacyTest) {
  auto a4 = fixture("A4");
  EXPECT_TRUE(are_conjugate_in(a4, P("(1,2,3)", 4), P("(1,3,4)", 4)));
  EXPECT_FALSE(are_conjugate_in(a4, P("(1,2,3)", 4), P("(1,3,2)", 4)));
  EXPECT_TRUE(are_conjugate_in(fixture("S4"), P("(1,2,3)", 4), P("(1,3,2)", 4)));
}

TEST(Group, PowerClassComposes) {
  for (auto name : {"S5", "A5", "M11"}) {
    ClassTable t(fixture(name));
    for (std::size_t c = 0; c < t.size(); ++c) {
      for (long long a = 1; a <= 6; ++a) {
        for (long long b = 1; b <= 6; ++b) {
          EXPECT_EQ(t.power_class(t.power_class(c, a), b), t.power_class(c, a * b))
              << name << " " << t[c].name;
        }
      }
      EXPECT_EQ(t.power_class(c, 1), c);
      EXPECT_EQ(t.power_class(c, static_cast<long long>(t[c].element_order) + 1), c);
    }
  }
}

TEST(Characters, CountIsAbelianizationOrder) {
  for (auto name : {"S3", "S4", "S5", "A4", "A5", "D5", "D7", "D11"}) {
    auto g = fixture(name);
    std::size_t const k = abelianization_oracle(g);
    EXPECT_EQ(abelianization_order(g), k) << name;
    EXPECT_EQ(linear_characters(g).size(), k) << name;
  }
  auto c12 = generate_group(12, {P("(1,2,3,4,5,6,7,8,9,10,11,12)", 12)});
  EXPECT_EQ(linear_characters(c12).size(), 12u);
  auto klein = generate_group(4, {P("(1,2)(3,4)", 4), P("(1,3)(2,4)", 4)});
  EXPECT_EQ(linear_characters(klein).size(), 4u);
}

TEST(Characters, AreDistinctHomomorphisms) {
  std::vector<PermutationGroup> groups{fixture("S4"), fixture("A4"), fixture("D7")};
  // centralizers give the non-simple shapes used by the cocycles
  groups.push_back(centralizer(fixture("S5"), P("(1,2)", 5)));
  groups.push_back(centralizer(fixture("M11"), P("(1,2,3,4,5,6,7,8,9,10,11)", 11)));
  groups.push_back(generate_group(
      6, {P("(1,2,3,4)", 6), P("(5,6)", 6)}));  // C4 x C2
  for (auto const& g : groups) {
    auto chars = linear_characters(g);
    std::set<std::vector<std::string>> seen;
    for (auto const& chi : chars) {
      std::vector<std::string> vals;
      for (auto const& a : g.elements()) {
        vals.push_back(to_string(chi.value(a)));
        for (auto const& b : g.elements()) {
          ASSERT_EQ(chi.value(a * b), chi.value(a) * chi.value(b));
        }
      }
      EXPECT_TRUE(chi.value(g.identity()).is_one());
      EXPECT_TRUE(seen.insert(vals).second);
    }
    EXPECT_TRUE(std::any_of(chars.begin(), chars.end(),
                            [](auto const& c) { return c.is_trivial(); }));
  }
}

TEST(Subgroups, RestrictS4ThreeCyclesToA4) {
  auto s4 = fixture("S4");
  auto a4 = fixture("A4");
  ClassTable t(s4);
  auto three = t[*t.find("3a")];
  auto parts = restrict_class_to_subgroup(s4, a4, three);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].size(), 4u);
  EXPECT_EQ(parts[1].size(), 4u);
  auto whole = restrict_class_to_subgroup(s4, s4, three);
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_EQ(whole[0].members, three.members);
  EXPECT_TRUE(restrict_class_to_subgroup(s4, a4, t[*t.find("2b")]).empty());
  EXPECT_THROW(restrict_class_to_subgroup(a4, s4, three), InputError);
}

TEST(GroupFiles, ParseAndReject) {
  auto spec = parse_group_text("# S3\ndegree 3\n(1,2,3)  # rotation\n\n(1,2)\n");
  EXPECT_EQ(spec.degree, 3u);
  EXPECT_EQ(spec.generators.size(), 2u);
  EXPECT_EQ(build_group(spec).order(), 6u);
  EXPECT_THROW(parse_group_text("(1,2)\n"), InputError);
  EXPECT_THROW(parse_group_text("degree 0\n"), InputError);
  EXPECT_THROW(parse_group_text(""), InputError);
  try {
    parse_group_text("degree 3\n(1,2)\n(1,5)\n");
    FAIL();
  } catch (InputError const& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(resolve_group_source("no-such-group"), InputError);
}

TEST(Examples, Permutations) {
  auto p = P("(1,2)(3,4)", 4);
  EXPECT_EQ(std::vector<Point>(p.images().begin(), p.images().end()),
            (std::vector<Point>{1, 0, 3, 2}));
  EXPECT_EQ(P("", 5), Permutation::identity(5));
  auto c = P("(1,2,3)", 3);
  EXPECT_EQ(to_string(c * c), "(1,3,2)");
}

TEST(Examples, Groups) {
  EXPECT_EQ(generate_group(3, {P("(1,2)", 3), P("(1,2,3)", 3)}).order(), 6u);
  EXPECT_EQ(generate_group(4, {}).order(), 1u);

  auto s3 = fixture("S3");
  ClassTable t(s3);
  std::vector<std::size_t> sizes;
  for (auto const& c : t.classes()) {
    sizes.push_back(c.size());
  }
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(ClassTable(fixture("trivial")).size(), 1u);

  auto cent = centralizer(s3, P("(1,2)", 3));
  EXPECT_EQ(std::vector<Permutation>(cent.elements().begin(), cent.elements().end()),
            (std::vector<Permutation>{Permutation::identity(3), P("(1,2)", 3)}));
  EXPECT_EQ(centralizer(s3, Permutation::identity(3)).order(), 6u);
  auto s4 = fixture("S4");
  auto c4 = centralizer(s4, P("(1,2,3,4)", 4));
  EXPECT_EQ(c4.order(), 4u);
  EXPECT_TRUE(c4.contains(P("(1,2,3,4)", 4).pow(2)));

  EXPECT_EQ(subgroup_generated(s3, {P("(1,2)", 3)}).order(), 2u);
  EXPECT_EQ(subgroup_generated(s3, {P("(1,2)", 3), P("(2,3)", 3)}).order(), 6u);
  EXPECT_EQ(subgroup_generated(s3, {Permutation::identity(3)}).order(), 1u);

  EXPECT_TRUE(are_conjugate_in(s3, P("(1,2)", 3), P("(2,3)", 3)));
  EXPECT_TRUE(are_conjugate_in(s3, P("(1,2)", 3), P("(1,2)", 3)));
  auto c3 = subgroup_generated(s3, {P("(1,2,3)", 3)});
  EXPECT_FALSE(are_conjugate_in(c3, P("(1,2,3)", 3), P("(1,3,2)", 3)));
}

TEST(Examples, CharactersAndPowerClasses) {
  EXPECT_EQ(linear_characters(fixture("S3")).size(), 2u);
  auto c4 = generate_group(4, {P("(1,2,3,4)", 4)});
  auto chars = linear_characters(c4);
  EXPECT_EQ(chars.size(), 4u);
  for (auto const& chi : chars) {
    for (auto const& g : c4.elements()) {
      EXPECT_EQ(4u % chi.value(g).order(), 0u);
    }
  }
  EXPECT_EQ(linear_characters(fixture("trivial")).size(), 1u);

  auto s5 = fixture("S5");
  ClassTable t5(s5);
  auto five = t5.class_index_of(P("(1,2,3,4,5)", 5));
  EXPECT_EQ(t5.power_class(five, 2), five);
  EXPECT_EQ(t5.power_class(five, 1), five);
  auto a4 = fixture("A4");
  ClassTable t4(a4);
  auto three = t4.class_index_of(P("(1,2,3)", 4));
  auto other = t4.power_class(three, 2);
  EXPECT_NE(other, three);
  EXPECT_TRUE(t4[other].contains(P("(1,3,2)", 4)));
}

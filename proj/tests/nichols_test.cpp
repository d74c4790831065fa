#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace collapse;

namespace {

  std::mt19937 rng(7);

  struct Instance {
    std::shared_ptr<Rack const> rack;
    std::vector<Cyclotomic> q;
    BraidedSpace space() const {
      return BraidedSpace(Cocycle(rack, q));
    }
    std::vector<std::uint32_t> table() const {
      return oracle::table_of(*rack);
    }
  };

  Instance make(Rack r, std::vector<Cyclotomic> base = {}) {
    auto p = std::make_shared<Rack const>(std::move(r));
    auto t = oracle::table_of(*p);
    return {p, oracle::random_cocycle(p->size(), t, rng, std::move(base))};
  }

  Instance constant(Rack r, Cyclotomic c) {
    auto p = std::make_shared<Rack const>(std::move(r));
    return {p, std::vector<Cyclotomic>(p->size() * p->size(), c)};
  }

  //! A random rack with at most 4 elements, cycling through the shapes.
  Rack random_small_rack(int k) {
    switch (k % 5) {
      case 0:
        return dihedral_rack(3);
      case 1:
        return trivial_rack(1 + rng() % 3);
      case 2:
        return permutation_rack(parse_permutation("(1,2)", 2 + rng() % 2));
      case 3:
        return permutation_rack(parse_permutation("(1,2,3)", 3 + rng() % 2));
      default: {
        auto s3 = build_group(*find_fixture("S3"));
        ClassTable t(s3);
        return conjugation_rack(s3, t[*t.find("3a")]);
      }
    }
  }

  std::vector<std::size_t> to_perm(std::vector<std::size_t> w, std::size_t n) {
    return oracle::word_product(w, n);
  }

}  // namespace

TEST(ReducedWord, MatchesInversionsOnS5) {
  std::vector<std::size_t> sigma(5);
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    auto w = reduced_word(sigma);
    EXPECT_EQ(w.size(), oracle::inversions(sigma));
    EXPECT_EQ(to_perm(w, 5), sigma);
    for (auto i : w) {
      EXPECT_GE(i, 1u);
      EXPECT_LT(i, 5u);
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  EXPECT_THROW(reduced_word(std::vector<std::size_t>{0, 0, 1}), InputError);
  EXPECT_THROW(reduced_word(std::vector<std::size_t>{0, 3}), InputError);
  EXPECT_TRUE(reduced_word(std::vector<std::size_t>{}).empty());
}

TEST(Matsumoto, AllReducedWordsAgreeOnS4) {
  for (int k = 0; k < 3; ++k) {
    auto inst = make(k == 0 ? dihedral_rack(3)
                     : k == 1 ? trivial_rack(3)
                              : permutation_rack(parse_permutation("(1,2,3)", 3)));
    auto v = inst.space();
    BraidOperators ops(v, 4);
    std::vector<oracle::Monomial> c(4);
    for (std::size_t i = 1; i < 4; ++i) {
      c[i] = oracle::braid(3, inst.table(), inst.q, 4, i);
    }
    std::vector<std::size_t> sigma(4);
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      auto words = oracle::all_reduced_words(sigma);
      ASSERT_FALSE(words.empty());
      auto const want = oracle::to_map(matsumoto_operator(ops, sigma));
      for (auto const& w : words) {
        EXPECT_EQ(oracle::to_map(word_operator(ops, w)), want);
        EXPECT_EQ(oracle::to_map(oracle::word_monomial(c, w, 81)), want);
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    EXPECT_THROW(matsumoto_operator(ops, std::vector<std::size_t>{0, 1, 2}),
                 InputError);
  }
}

TEST(Symmetrizer, DirectExamples) {
  auto inst = make(dihedral_rack(3));
  auto v = inst.space();
  BraidOperators o1(v, 1);
  EXPECT_EQ(quantum_symmetrizer_direct(o1), SparseOperator::identity(3));
  BraidOperators o2(v, 2);
  EXPECT_EQ(quantum_symmetrizer_direct(o2),
            SparseOperator::identity(9) + SparseOperator::from_monomial(o2.c(1)));
  // one point with q = -1: Q_2 = 0 already
  auto minus = constant(trivial_rack(1), Cyclotomic(-1L));
  BraidOperators m2(minus.space(), 2);
  EXPECT_TRUE(quantum_symmetrizer_direct(m2).is_zero());
  BraidOperators m3(minus.space(), 3);
  EXPECT_TRUE(quantum_symmetrizer(m3).is_zero());
  BraidOperators o6(v, 6);
  EXPECT_THROW(quantum_symmetrizer_direct(o6), CapExceeded);
}

TEST(Symmetrizer, FactorizedEqualsDirectAndOracle) {
  for (int k = 0; k < 10; ++k) {
    auto inst = make(random_small_rack(k));
    auto v = inst.space();
    std::size_t const d = inst.rack->size();
    for (std::size_t n = 1; n <= 4; ++n) {
      BraidOperators ops(v, n);
      auto direct = quantum_symmetrizer_direct(ops);
      EXPECT_EQ(quantum_symmetrizer(ops), direct) << k << " " << n;
      EXPECT_EQ(symmetrizer_matrix(v, n), direct) << k << " " << n;
      if (n >= 2) {
        EXPECT_EQ(oracle::to_map(direct), oracle::symmetrizer(d, inst.table(), inst.q, n));
      }
    }
  }
}

TEST(Symmetrizer, RankIsInvariantUnderRackAutomorphism) {
  // relabelling D3 by x -> -x mod 3 and carrying q along gives the same dims
  auto a = make(dihedral_rack(3));
  std::vector<std::size_t> f{0, 2, 1};
  std::vector<Cyclotomic> q2(9);
  for (std::size_t x = 0; x < 3; ++x) {
    for (std::size_t y = 0; y < 3; ++y) {
      q2[f[x] * 3 + f[y]] = a.q[x * 3 + y];
    }
  }
  Instance b{a.rack, q2};
  NicholsOptions opts;
  opts.max_degree = 6;
  EXPECT_EQ(hilbert_prefix(a.space(), opts).dims, hilbert_prefix(b.space(), opts).dims);
}

TEST(Hilbert, GoldenValues) {
  // frozen from oracle::nichols_dims
  auto one = constant(trivial_rack(1), Cyclotomic(-1L));
  EXPECT_EQ(oracle::nichols_dims(1, one.table(), one.q, 4),
            (std::vector<std::size_t>{1, 1, 0}));
  auto g = hilbert_prefix(one.space());
  EXPECT_EQ(g.dims, (std::vector<std::size_t>{1, 1, 0}));
  EXPECT_EQ(g.status, SeriesStatus::Complete);
  EXPECT_EQ(g.total(), 2u);

  auto d3 = constant(dihedral_rack(3), Cyclotomic(-1L));
  EXPECT_EQ(oracle::nichols_dims(3, d3.table(), d3.q, 6),
            (std::vector<std::size_t>{1, 3, 4, 3, 1, 0}));
  g = hilbert_prefix(d3.space());
  EXPECT_EQ(g.dims, (std::vector<std::size_t>{1, 3, 4, 3, 1, 0}));
  EXPECT_EQ(g.total(), 12u);
  EXPECT_TRUE(g.truncated_by.empty());

  for (std::size_t k = 1; k <= 3; ++k) {
    auto tr = constant(trivial_rack(k), Cyclotomic(1L));
    NicholsOptions opts;
    opts.max_degree = 5;
    g = hilbert_prefix(tr.space(), opts);
    ASSERT_EQ(g.dims.size(), 6u);
    for (std::size_t n = 0; n <= 5; ++n) {
      EXPECT_EQ(g.dims[n], oracle::binomial(n + k - 1, k - 1)) << k << " " << n;
    }
    EXPECT_EQ(g.status, SeriesStatus::Truncated);
    EXPECT_EQ(g.truncated_by, "degree");
    EXPECT_FALSE(g.total().has_value());
  }
  // q = -1 on a trivial rack is an exterior algebra
  auto ext = constant(trivial_rack(3), Cyclotomic(-1L));
  EXPECT_EQ(hilbert_prefix(ext.space()).dims, (std::vector<std::size_t>{1, 3, 3, 1, 0}));
}

TEST(Hilbert, TwistedCocyclesMatchOracle) {
  for (int k = 0; k < 6; ++k) {
    auto inst = make(random_small_rack(k));
    NicholsOptions opts;
    opts.max_degree = 4;
    auto g = hilbert_prefix(inst.space(), opts);
    auto want = oracle::nichols_dims(inst.rack->size(), inst.table(), inst.q, 4);
    EXPECT_EQ(g.dims, want) << k;
    opts.method = RankMethod::Exact;
    EXPECT_EQ(hilbert_prefix(inst.space(), opts).dims, g.dims) << k;
  }
}

TEST(Hilbert, CharacterCocycleOnTranspositions) {
  auto s3 = build_group(*find_fixture("S3"));
  ClassTable t(s3);
  auto const& c = t[*t.find("2a")];
  ClassSections sec(s3, c, c.representative);
  auto rack = std::make_shared<Rack const>(conjugation_rack(s3, c));
  for (auto const& chi : linear_characters(sec.centralizer_group())) {
    auto q = to_cyclotomic(cocycle_from_character(sec, rack, chi));
    auto g = hilbert_prefix(BraidedSpace(q));
    auto want = oracle::nichols_dims(3, oracle::table_of(*rack), q.values(), 5);
    if (chi.is_trivial()) {
      EXPECT_EQ(g.status, SeriesStatus::Truncated);
      ASSERT_GE(g.dims.size(), want.size());
      EXPECT_EQ(std::vector<std::size_t>(g.dims.begin(), g.dims.begin() + want.size()),
                want);
    } else {
      EXPECT_EQ(g.dims, want);
      EXPECT_EQ(g.dims, (std::vector<std::size_t>{1, 3, 4, 3, 1, 0}));
    }
  }
}

TEST(Hilbert, OctahedralPrefix) {
  auto o = constant(octahedral_rack(), Cyclotomic(-1L));
  auto g = hilbert_prefix(o.space());
  EXPECT_EQ(g.dims, (std::vector<std::size_t>{1, 6, 19, 42, 71, 96}));
  EXPECT_EQ(g.truncated_by, "rows");
  EXPECT_EQ(oracle::nichols_dims(6, o.table(), o.q, 3),
            (std::vector<std::size_t>{1, 6, 19, 42}));
  NicholsOptions opts;
  opts.method = RankMethod::Exact;
  opts.max_degree = 5;
  EXPECT_EQ(hilbert_prefix(o.space(), opts).dims, g.dims);
}

TEST(Hilbert, Truncations) {
  auto d3 = constant(dihedral_rack(3), Cyclotomic(-1L));
  NicholsOptions opts;
  opts.max_degree = 3;
  auto g = hilbert_prefix(d3.space(), opts);
  EXPECT_EQ(g.dims, (std::vector<std::size_t>{1, 3, 4, 3}));
  EXPECT_EQ(g.truncated_by, "degree");
  opts.max_degree = 0;
  EXPECT_EQ(hilbert_prefix(d3.space(), opts).dims, std::vector<std::size_t>{1});

  opts = {};
  opts.row_cap = 30;
  g = hilbert_prefix(d3.space(), opts);
  EXPECT_EQ(g.dims, (std::vector<std::size_t>{1, 3, 4, 3}));
  EXPECT_EQ(g.truncated_by, "rows");
  EXPECT_EQ(g.row_cap, 30u);

  opts = {};
  opts.work_cap = 10;
  g = hilbert_prefix(d3.space(), opts);
  EXPECT_EQ(g.truncated_by, "work");
  EXPECT_EQ(g.status, SeriesStatus::Truncated);
  EXPECT_EQ(g.work_cap, 10u);

  EXPECT_THROW(graded_dimension(d3.space(), 10), CapExceeded);
  EXPECT_EQ(graded_dimension(d3.space(), 9), 0u);
  EXPECT_EQ(graded_dimension(d3.space(), 0), 1u);
  EXPECT_EQ(graded_dimension(d3.space(), 1), 3u);
  EXPECT_EQ(graded_dimension(d3.space(), 4), 1u);
}

TEST(Modular, SplitPrimesAndReduction) {
  for (std::uint32_t m : {1u, 3u, 4u, 5u, 8u, 12u}) {
    std::vector<Cyclotomic> vals{Cyclotomic::zeta(m), Cyclotomic(mpq_class(1, 3))};
    auto fs = split_primes(m, vals, 3);
    ASSERT_EQ(fs.size(), 3u);
    for (auto const& f : fs) {
      EXPECT_TRUE(is_prime_u32(f.p));
      EXPECT_EQ(f.p % m, 1u % m);
      EXPECT_LT(f.p, 1u << 31);
      EXPECT_EQ(pow_mod(f.root, m, f.p), 1u);
      for (std::uint32_t k = 1; k < m; ++k) {
        EXPECT_NE(pow_mod(f.root, k, f.p), 1u);
      }
      // reduction is a ring homomorphism
      auto a = Cyclotomic::zeta(m) + Cyclotomic(mpq_class(2, 7));
      auto b = Cyclotomic::zeta(m, 2) - Cyclotomic(3L);
      EXPECT_EQ(*f.reduce(a * b), mul_mod(*f.reduce(a), *f.reduce(b), f.p));
      EXPECT_EQ(*f.reduce(a + b), (*f.reduce(a) + *f.reduce(b)) % f.p);
      EXPECT_EQ(mul_mod(*f.reduce(vals[1]), 3, f.p), 1u);
    }
  }
}

TEST(Modular, BarrettMatchesDivision) {
  std::mt19937_64 r64(3);
  for (std::uint32_t p : {3u, 2147483647u, 2147483629u, 65537u}) {
    BarrettReducer red(p);
    for (int k = 0; k < 2000; ++k) {
      std::uint64_t x = r64() >> 2;
      EXPECT_EQ(red(x), x % p);
    }
    EXPECT_EQ(red(0), 0u);
    EXPECT_EQ(red(p), 0u);
  }
}

TEST(Modular, RankModPMatchesOracle) {
  std::uint32_t const p = 101;
  for (int k = 0; k < 30; ++k) {
    std::size_t const rows = 1 + rng() % 7;
    std::size_t const cols = 1 + rng() % 7;
    std::vector<std::uint32_t> a(rows * cols);
    oracle::Map m;
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        // low-rank products of small vectors plus sparse noise
        std::uint32_t v = (rng() % 3 == 0) ? rng() % 3 : 0;
        a[i * cols + j] = v;
        if (v) {
          m.emplace(std::make_pair(static_cast<std::uint32_t>(i),
                                   static_cast<std::uint32_t>(j)),
                    Cyclotomic(static_cast<long>(v)));
        }
      }
    }
    // plain elimination mod p; rank mod p never exceeds rank over Q
    std::vector<std::vector<long>> dense(rows, std::vector<long>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        dense[i][j] = a[i * cols + j];
      }
    }
    std::size_t rk = 0;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
      std::size_t piv = rk;
      while (piv < rows && dense[piv][c] % p == 0) {
        ++piv;
      }
      if (piv == rows) {
        continue;
      }
      std::swap(dense[piv], dense[rk]);
      long inv = static_cast<long>(inv_mod(dense[rk][c] % p, p));
      for (std::size_t i = rk + 1; i < rows; ++i) {
        long f = dense[i][c] * inv % p;
        for (std::size_t j = 0; j < cols; ++j) {
          dense[i][j] = ((dense[i][j] - f * dense[rk][j]) % p + p) % p;
        }
      }
      ++rk;
    }
    auto copy = a;
    EXPECT_EQ(rank_mod_p(copy, rows, cols, p), rk);
    EXPECT_LE(rk, oracle::rank(m, cols));
  }
}

TEST(Examples, WordsAndSymmetrizers) {
  EXPECT_TRUE(reduced_word(std::vector<std::size_t>{0, 1, 2}).empty());
  EXPECT_EQ(reduced_word(std::vector<std::size_t>{1, 0}), std::vector<std::size_t>{1});
  EXPECT_EQ(reduced_word(std::vector<std::size_t>{2, 1, 0}).size(), 3u);

  auto inst = make(dihedral_rack(3));
  auto v = inst.space();
  BraidOperators o3(v, 3);
  EXPECT_EQ(matsumoto_operator(o3, std::vector<std::size_t>{0, 1, 2}),
            MonomialOperator::identity(27));
  EXPECT_EQ(matsumoto_operator(o3, std::vector<std::size_t>{2, 1, 0}),
            o3.c(1) * o3.c(2) * o3.c(1));
  EXPECT_EQ(o3.c(1) * o3.c(2) * o3.c(1), o3.c(2) * o3.c(1) * o3.c(2));
  BraidOperators o2(v, 2);
  EXPECT_EQ(matsumoto_operator(o2, std::vector<std::size_t>{1, 0}), o2.c(1));

  auto minus = constant(trivial_rack(1), Cyclotomic(-1L));
  BraidOperators m3(minus.space(), 3);
  EXPECT_TRUE(quantum_symmetrizer_direct(m3).is_zero());
  BraidOperators m4(minus.space(), 4);
  EXPECT_TRUE(quantum_symmetrizer(m4).is_zero());

  auto d3 = constant(dihedral_rack(3), Cyclotomic(-1L));
  BraidOperators d(d3.space(), 3);
  EXPECT_EQ(quantum_symmetrizer(d), quantum_symmetrizer_direct(d));
  BraidOperators d2(d3.space(), 2);
  EXPECT_EQ(quantum_symmetrizer(d2),
            SparseOperator::identity(9) + SparseOperator::from_monomial(d2.c(1)));

  auto plus = constant(trivial_rack(1), Cyclotomic(1L));
  NicholsOptions opts;
  opts.max_degree = 4;
  auto g = hilbert_prefix(plus.space(), opts);
  EXPECT_EQ(g.dims, (std::vector<std::size_t>{1, 1, 1, 1, 1}));
  EXPECT_EQ(g.status, SeriesStatus::Truncated);
  for (std::size_t n = 0; n <= 6; ++n) {
    EXPECT_EQ(graded_dimension(plus.space(), n), 1u);
  }
  opts.max_degree = 6;
  auto d3g = hilbert_prefix(d3.space(), opts);
  EXPECT_EQ(d3g.dims, (std::vector<std::size_t>{1, 3, 4, 3, 1, 0}));
  EXPECT_EQ(d3g.status, SeriesStatus::Complete);
}

#include <gtest/gtest.h>

#include <random>

#include "dendro/operads.hpp"
#include "dendro/perm.hpp"
#include "dendro/trees.hpp"

using namespace dendro;

namespace {

OperadPtr share(TabulatedOperad p) { return std::make_shared<const TabulatedOperad>(std::move(p)); }

// oracle: every color map and every profile-preserving operation map, kept when valid
long brute_functor_count(const OperadPtr& p, const OperadPtr& q) {
  int nc = p->color_count(), mc = q->color_count();
  long count = 0;
  std::vector<int> cm(nc, 0);
  while (true) {
    std::vector<std::vector<int>> choices;
    bool empty = false;
    for (int x = 0; x < p->size(); ++x) {
      std::vector<int> dom;
      for (int c : p->op(x).dom) dom.push_back(cm[c]);
      choices.push_back(q->hom(dom, cm[p->op(x).cod]));
      if (choices.back().empty()) empty = true;
    }
    if (!empty) {
      std::vector<size_t> pos(p->size(), 0);
      while (true) {
        OperadFunctor f{p, q, cm, std::vector<int>(p->size())};
        for (int x = 0; x < p->size(); ++x) f.op_map[x] = choices[x][pos[x]];
        if (validate_functor(f)) ++count;
        int k = p->size() - 1;
        while (k >= 0 && pos[k] + 1 == choices[k].size()) pos[k--] = 0;
        if (k < 0) break;
        ++pos[k];
      }
    }
    int k = nc - 1;
    while (k >= 0 && cm[k] == mc - 1) cm[k--] = 0;
    if (k < 0) break;
    ++cm[k];
  }
  return count;
}

int count_ops(const TabulatedOperad& p, int arity) { return static_cast<int>(p.ops_of_arity(arity).size()); }

}  // namespace

TEST(Operads, AsHasPermutationsInEachArity) {
  auto as = make_as(4);
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(count_ops(as, n), factorial(n));
  EXPECT_TRUE(validate_operad(as).ok());
}

TEST(Operads, CommHasOneOperationPerArity) {
  auto comm = make_comm(4);
  for (int n = 0; n <= 4; ++n) EXPECT_EQ(count_ops(comm, n), 1);
  EXPECT_TRUE(validate_operad(comm).ok());
}

TEST(Operads, StandardOperadsAreValid) {
  EXPECT_TRUE(validate_operad(one_op_per_arity(4)).ok());
  EXPECT_TRUE(validate_operad(one_op_per_arity(3, false)).ok());
  EXPECT_TRUE(validate_operad(make_unit_operad()).ok());
  EXPECT_TRUE(validate_operad(make_as(3, false)).ok());
}

TEST(Operads, EnvironmentProfileSizes) {
  std::vector<int> sizes{1, 2};
  auto e = environment_operad(sizes, 2);
  auto check = validate_operad(e);
  EXPECT_TRUE(check.ok()) << check.failure;
  for (const auto& [dom, cod] : e.nonempty_profiles()) {
    int inputs = 1;
    for (int c : dom) inputs *= sizes[c];
    int expect = 1;
    for (int k = 0; k < inputs; ++k) expect *= sizes[cod];
    EXPECT_EQ(static_cast<int>(e.hom(dom, cod).size()), expect);
  }
}

TEST(Operads, EnvironmentTablesCompose) {
  auto e = environment_operad({2}, 2);
  // composing a binary function with a unary one in slot 0
  for (int f : e.ops_of_arity(2))
    for (int g : e.ops_of_arity(1)) {
      auto tf = environment_table(e, f), tg = environment_table(e, g);
      auto th = environment_table(e, e.compose(f, 0, g));
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) EXPECT_EQ(th[a * 2 + b], tf[tg[a] * 2 + b]);
    }
}

TEST(Operads, FreeOperadOnCorolla) {
  for (int n = 0; n <= 3; ++n) {
    auto o = free_operad_on_tree(Tree::corolla(n));
    EXPECT_TRUE(validate_operad(o).ok());
    EXPECT_EQ(count_ops(o, n), n == 1 ? 3 : factorial(n)) << n;
  }
}

TEST(Operads, FreeOperadOnTreeHomSets) {
  Tree t = Tree::build({"a", "b", "c", "d", "e"}, {{"b", "a"}, {"c", "a"}, {"d", "b"}, {"e", "b"}}, {"c", "d", "e"});
  auto o = free_operad_on_tree(t);
  EXPECT_TRUE(validate_operad(o).ok());
  int a = t.find("a"), b = t.find("b"), c = t.find("c"), d = t.find("d"), e = t.find("e");
  EXPECT_EQ(o.hom({b, c}, a).size(), 1u);
  EXPECT_EQ(o.hom({c, b}, a).size(), 1u);
  EXPECT_EQ(o.hom({d, e, c}, a).size(), 1u);
  EXPECT_EQ(o.hom({d, c}, a).size(), 0u);
  EXPECT_EQ(o.hom({a}, b).size(), 0u);
}

TEST(Functors, CorollaToAsMatchesBruteForce) {
  auto as = share(make_as(3));
  for (int n = 0; n <= 3; ++n) {
    auto o = share(free_operad_on_tree(Tree::corolla(n)));
    auto fs = enumerate_functors(o, as);
    EXPECT_EQ(static_cast<long>(fs.size()), brute_functor_count(o, as)) << n;
    EXPECT_EQ(static_cast<int>(fs.size()), factorial(n)) << n;
    for (const auto& f : fs) EXPECT_TRUE(validate_functor(f));
  }
}

TEST(Functors, TreeToCommIsUnique) {
  auto comm = share(make_comm(3));
  Tree t = Tree::build({"a", "b", "c", "d", "e"}, {{"b", "a"}, {"c", "a"}, {"d", "b"}, {"e", "b"}}, {"c", "d", "e"});
  auto o = share(free_operad_on_tree(t));
  EXPECT_EQ(enumerate_functors(o, comm).size(), 1u);
  EXPECT_EQ(brute_functor_count(o, comm), 1);
}

TEST(Functors, EtaPicksAColor) {
  auto e = share(environment_operad({1, 2}, 2));
  auto eta = share(free_operad_on_tree(Tree::eta()));
  EXPECT_EQ(enumerate_functors(eta, e).size(), 2u);
}

TEST(Functors, SmallTreesMatchBruteForce) {
  auto as = share(make_as(3));
  auto env = share(environment_operad({1, 2}, 2));
  EnumOptions opt;
  opt.max_vertices = 2;
  opt.max_edges = 4;
  for (const auto& t : enumerate_trees(opt)) {
    auto o = share(free_operad_on_tree(t));
    if (o->arity_bound() > 3) continue;
    EXPECT_EQ(static_cast<long>(enumerate_functors(o, as).size()), brute_functor_count(o, as)) << canonical_code(t, false);
    if (t.vertex_count() <= 1 && o->arity_bound() <= 2)
      EXPECT_EQ(static_cast<long>(enumerate_functors(o, env).size()), brute_functor_count(o, env)) << canonical_code(t, false);
  }
}

TEST(Functors, RandomOrderAndLimit) {
  std::mt19937 rng(7);
  auto as = share(make_as(3));
  auto o = share(free_operad_on_tree(Tree::corolla(3)));
  FunctorOptions opt;
  opt.rng = &rng;
  opt.limit = 1;
  auto fs = enumerate_functors(o, as, opt);
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_TRUE(validate_functor(fs[0]));
}

TEST(Functors, BoundIsChecked) {
  auto as = share(make_as(2));
  auto o = share(free_operad_on_tree(Tree::corolla(3)));
  EXPECT_THROW(enumerate_functors(o, as), OperadError);
}

TEST(Functors, CollapseAsToComm) {
  auto as = share(make_as(3));
  auto comm = share(make_comm(3));
  auto f = collapse_functor(as, comm);
  EXPECT_TRUE(validate_functor(f));
  EXPECT_FALSE(is_equivalence(f));
  EXPECT_TRUE(is_isofibration(f));
  EXPECT_TRUE(is_equivalence(identity_functor(as)));
}

TEST(Categories, AdjunctionRoundTrip) {
  for (const auto& c : {terminal_category(), iso_category(),
                        poset_category({{true, true, true}, {false, true, true}, {false, false, true}})}) {
    ASSERT_TRUE(c.validate());
    auto p = j_lower(c);
    EXPECT_TRUE(validate_operad(p).ok());
    EXPECT_TRUE(isomorphic_categories(j_upper(p), c));
  }
}

TEST(Categories, JStarOfTerminalIsComm) {
  auto p = j_star(terminal_category(), 3);
  EXPECT_TRUE(validate_operad(p).ok());
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(count_ops(p, n), 1);
  auto a = share(std::move(p));
  auto comm = share(make_comm(3));
  auto fs = enumerate_functors(a, comm);
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_TRUE(is_equivalence(fs[0]));
  EXPECT_TRUE(isomorphic_categories(j_upper(*a), terminal_category()));
}

TEST(Categories, JStarOfNonCodiscrete) {
  auto c = poset_category({{true, true}, {false, true}});
  auto p = j_star(c, 3);
  auto check = validate_operad(p);
  EXPECT_TRUE(check.ok()) << check.failure;
  EXPECT_EQ(count_ops(p, 0), 0);
  EXPECT_TRUE(isomorphic_categories(j_upper(p), c));
}

TEST(Categories, IsoCategoryInvertibles) {
  auto p = j_lower(iso_category());
  for (int f = 0; f < p.size(); ++f) EXPECT_TRUE(is_invertible(p, f));
  auto poset = j_lower(poset_category({{true, true}, {false, true}}));
  int nonid = 0;
  for (int f = 0; f < poset.size(); ++f)
    if (!is_invertible(poset, f)) ++nonid;
  EXPECT_EQ(nonid, 1);
}

TEST(Categories, EquivalenceOfIsoCategoryToTerminal) {
  auto a = share(j_lower(iso_category()));
  auto t = share(j_lower(terminal_category()));
  auto fs = enumerate_functors(a, t);
  ASSERT_EQ(fs.size(), 1u);
  EXPECT_TRUE(is_equivalence(fs[0]));
  EXPECT_TRUE(is_isofibration(fs[0]));
  auto back = enumerate_functors(t, a);
  EXPECT_EQ(back.size(), 2u);
  for (const auto& g : back) {
    EXPECT_TRUE(is_equivalence(g));
    EXPECT_FALSE(is_isofibration(g));
  }
}

TEST(Transfer, AlongBijections) {
  auto env = share(environment_operad({2, 2}, 2));
  auto comm = share(make_comm(2));
  FunctorOptions opt;
  opt.color_map = {0};
  auto fs = enumerate_functors(comm, env, opt);
  ASSERT_FALSE(fs.empty());
  int swap = -1;
  for (int u : env->hom({0}, 1))
    if (is_invertible(*env, u) && environment_table(*env, u) == std::vector<int>{1, 0}) swap = u;
  ASSERT_GE(swap, 0);
  for (const auto& f : fs) {
    auto r = transfer_algebra(f, {swap});
    EXPECT_TRUE(r.functor_ok);
    EXPECT_TRUE(r.natural);
    EXPECT_TRUE(r.unique);
    EXPECT_EQ(r.g.color_map, std::vector<int>{1});
  }
}

TEST(Transfer, RejectsNonIso) {
  auto env = share(environment_operad({2}, 2));
  auto comm = share(make_comm(2));
  auto fs = enumerate_functors(comm, env);
  ASSERT_FALSE(fs.empty());
  int constant = -1;
  for (int u : env->hom({0}, 0))
    if (environment_table(*env, u) == std::vector<int>{0, 0}) constant = u;
  EXPECT_THROW(transfer_algebra(fs[0], {constant}), OperadError);
}

TEST(Perms, RankRoundTrip) {
  for (int n = 0; n <= 5; ++n) {
    auto ps = all_perms(n);
    for (size_t r = 0; r < ps.size(); ++r) {
      EXPECT_EQ(perm_rank(ps[r]), static_cast<int>(r));
      EXPECT_EQ(perm_unrank(n, static_cast<int>(r)), ps[r]);
      EXPECT_TRUE(is_identity(compose_perm(ps[r], inverse(ps[r]))));
    }
  }
}

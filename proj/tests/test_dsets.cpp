#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>

#include "dendro/dsets.hpp"
#include "dendro/omega.hpp"
#include "dendro/presentation.hpp"

using namespace dendro;

namespace {

OperadPtr share(TabulatedOperad p) { return std::make_shared<const TabulatedOperad>(std::move(p)); }

CatalogPtr catalog(int v, int e = -1) { return std::make_shared<const ShapeCatalog>(v, e); }

bool has_isomorphism(const TabulatedOperad& a, const TabulatedOperad& b) {
  if (a.size() != b.size() || a.color_count() != b.color_count()) return false;
  auto pa = share(a), pb = share(b);
  for (const auto& f : enumerate_functors(pa, pb)) {
    std::vector<int> seen(b.size(), 0), cs(b.color_count(), 0);
    bool ok = true;
    for (int y : f.op_map)
      if (seen[y]++) ok = false;
    for (int c : f.color_map)
      if (cs[c]++) ok = false;
    if (ok) return true;
  }
  return false;
}

// operad maps Omega(T) -> P counted by brute force
long functor_count(const Tree& t, const OperadPtr& p) {
  for (int v : t.vertices())
    if (t.arity(v) > p->arity_bound() && p->empty_above_bound()) return 0;
  auto o = share(free_operad_on_tree(t));
  return static_cast<long>(enumerate_functors(o, p).size());
}

Tree l(int n) { return Tree::linear(n); }

FiniteCategory arrow_category() { return poset_category({{true, true}, {false, true}}); }

}  // namespace

TEST(Catalog, ShapesAreStandardAndDistinct) {
  auto c = catalog(2, 4);
  std::set<std::string> codes;
  for (int s = 0; s < c->size(); ++s) {
    EXPECT_TRUE(codes.insert(c->code(s)).second);
    EXPECT_EQ(c->find(c->shape(s)), s);
    EXPECT_LE(c->shape(s).vertex_count(), 2);
    EXPECT_LE(c->shape(s).size(), 4);
  }
  EXPECT_GE(c->eta(), 0);
  EXPECT_GE(c->linear(2), 0);
  EXPECT_EQ(c->linear(3), -1);
  EXPECT_GE(c->corolla(3), 0);
}

TEST(Catalog, FacesAndSquaresCommute) {
  auto c = catalog(3, 5);
  for (int s = 0; s < c->size(); ++s) {
    const auto& fs = c->faces(s);
    for (const auto& f : fs) {
      auto homs = hom_maps(c->shape(f.shape), c->shape(s));
      EXPECT_NE(std::find(homs.begin(), homs.end(), f.map), homs.end());
    }
    for (const auto& sq : c->squares(s)) {
      ASSERT_EQ(sq.ways.size(), 2u);
      std::vector<std::vector<int>> composite;
      for (const auto& [a, m] : sq.ways) {
        std::vector<int> comp;
        for (int e : m) comp.push_back(fs[a].map[e]);
        composite.push_back(comp);
      }
      EXPECT_EQ(composite[0], composite[1]) << c->code(s);
      EXPECT_NE(sq.ways[0].first, sq.ways[1].first);
    }
  }
}

TEST(Nerve, CountsMatchFunctors) {
  auto c = catalog(2, 3);
  for (auto p : {share(make_as(2)), share(make_comm(2)), share(environment_operad({1, 2}, 2)),
                 share(j_lower(iso_category()))}) {
    auto x = nerve(p, c);
    for (int s = 0; s < c->size(); ++s)
      EXPECT_EQ(x.count(s), functor_count(c->shape(s), p)) << p->name << " " << c->code(s);
  }
}

TEST(Nerve, DendrexFunctorsAreValidAndDistinct) {
  auto c = catalog(2, 3);
  auto p = share(make_as(2));
  auto x = nerve(p, c);
  for (int s = 0; s < c->size(); ++s) {
    std::set<std::vector<int>> seen;
    for (int z = 0; z < x.count(s); ++z) {
      auto f = nerve_dendrex_functor(p, c->shape(s), x.dendrex(s, z));
      std::string why;
      EXPECT_TRUE(validate_functor(f, &why)) << why;
      EXPECT_TRUE(seen.insert(f.op_map).second);
    }
  }
}

TEST(Nerve, RejectsPlanarAndSmallBound) {
  auto c = catalog(2, 4);
  EXPECT_THROW(nerve(share(make_as(2)), c), OperadError);
  EXPECT_NO_THROW(nerve(share(make_as(3)), catalog(2, 3)));
  EXPECT_THROW(nerve(share(one_op_per_arity(3, true)), catalog(2, 3)), OperadError);
}

TEST(Presheaf, NervesAndRepresentablesValidate) {
  auto c = catalog(2, 3);
  for (const auto& x : {nerve(share(make_as(2)), c), nerve(share(make_comm(2)), c), representable(l(2), c),
                        representable(Tree::corolla(2), c), empty_dset(c)}) {
    auto r = validate_presheaf(x);
    EXPECT_TRUE(r.ok) << x.name() << ": " << r.failure;
  }
}

TEST(Presheaf, DetectsBrokenAction) {
  auto c = catalog(1, 3);
  // restriction to eta lands outside the listed dendrices of another shape
  DendroidalSet y(
      c, [](int, int, const std::vector<int>&, const Dendrex& d) { return Dendrex{d[0] + 1}; }, "bad");
  y.add(c->eta(), {0});
  EXPECT_FALSE(validate_presheaf(y).ok);
}

TEST(Representable, MatchesNerveOfFreeOperad) {
  auto c = catalog(2, 3);
  for (const Tree& t : {l(2), Tree::corolla(2), Tree::eta()}) {
    auto rep = representable(t, c);
    auto nv = nerve(share(free_operad_on_tree(t)), c);
    for (int s = 0; s < c->size(); ++s) {
      EXPECT_EQ(rep.count(s), nv.count(s));
      EXPECT_EQ(rep.count(s), static_cast<int>(hom_maps(c->shape(s), t).size()));
    }
  }
}

TEST(Yoneda, MapsCorrespondToDendrices) {
  auto c = catalog(2, 3);
  auto x = nerve(share(make_comm(2)), c);
  Tree t = c->shape(c->linear(2));
  auto rep = representable(t, c);
  auto maps = yoneda_maps(rep, t, x);
  EXPECT_EQ(static_cast<int>(maps.size()), x.count(c->linear(2)));
  std::set<std::vector<std::vector<int>>> distinct;
  for (const auto& f : maps) {
    std::string why;
    EXPECT_TRUE(validate_map(f, &why)) << why;
    distinct.insert(f.map);
  }
  EXPECT_EQ(distinct.size(), maps.size());
  auto e = empty_dset(c);
  EXPECT_TRUE(validate_map(empty_map(e, x)));
}

TEST(Horns, FamiliesAreMatchingAndComplete) {
  auto c = catalog(2, 3);
  auto x = nerve(share(environment_operad({1, 2}, 2)), c);
  for (int s = 0; s < c->size(); ++s) {
    const auto& fs = c->faces(s);
    for (int a = -1; a < static_cast<int>(fs.size()); ++a) {
      auto fams = a < 0 ? boundary_families(x, s) : horn_families(x, s, a);
      std::set<std::vector<int>> got;
      for (const auto& f : fams) {
        EXPECT_TRUE(is_matching(x, f));
        got.insert(f.dendrices);
      }
      EXPECT_EQ(got.size(), fams.size());
      for (int z = 0; z < x.count(s); ++z) EXPECT_TRUE(got.count(restriction_family(x, s, a, z).dendrices));
    }
  }
}

TEST(Horns, BruteForceFamilyCount) {
  // families over all tuples of face dendrices checked for matching
  auto c = catalog(2, 3);
  auto x = nerve(share(environment_operad({2}, 2)), c);
  for (int s = 0; s < c->size(); ++s) {
    if (c->shape(s).vertex_count() != 2) continue;
    const auto& fs = c->faces(s);
    for (int a = 0; a < static_cast<int>(fs.size()); ++a) {
      long brute = 0;
      MatchingFamily f{s, a, std::vector<int>(fs.size(), -1)};
      std::function<void(int)> rec = [&](int k) {
        if (k == static_cast<int>(fs.size())) {
          brute += is_matching(x, f);
          return;
        }
        if (k == a) return rec(k + 1);
        for (int z = 0; z < x.count(fs[k].shape); ++z) {
          f.dendrices[k] = z;
          rec(k + 1);
        }
      };
      rec(0);
      EXPECT_EQ(static_cast<long>(horn_families(x, s, a).size()), brute) << c->code(s);
    }
  }
}

TEST(Kan, NervesAreStrictlyInnerKan) {
  auto c = catalog(3, 4);
  for (auto p : {share(make_as(3)), share(make_comm(3)), share(j_lower(iso_category()))}) {
    auto r = inner_kan_report(nerve(p, c), true);
    EXPECT_TRUE(r.holds) << r.witness;
    EXPECT_GT(r.horns, 0);
    EXPECT_EQ(r.horns, r.fillers);
  }
  EXPECT_TRUE(is_strict(representable(l(3), c)));
}

TEST(Kan, MissingTopDendrexBreaksKan) {
  auto c = catalog(2, 3);
  Tree t = c->shape(c->linear(2));
  auto rep = representable(t, c);
  std::vector<int> id{0, 1, 2};
  int top = rep.find(c->linear(2), id);
  ASSERT_GE(top, 0);
  auto horn = delete_dendrex(rep, c->linear(2), top);
  EXPECT_TRUE(validate_presheaf(horn).ok);
  auto r = inner_kan_report(horn, false);
  EXPECT_FALSE(r.holds);
  EXPECT_FALSE(r.witness.empty());
}

TEST(Kan, TwoFillersAreNotStrict) {
  auto c = catalog(2, 3);
  // doubling every dendrex of L2 gives two fillers per inner horn
  auto p = share(make_as(2));
  auto base = nerve(p, c);
  DendroidalSet x(
      c,
      [&base](int r, int t, const std::vector<int>& m, const Dendrex& d) {
        Dendrex core(d.begin(), d.end() - 1);
        Dendrex out = base.restrict_data(r, t, m, core);
        out.push_back(r == t && d.back() == 1 ? 1 : 0);
        return out;
      },
      "doubled");
  for (int s = 0; s < c->size(); ++s)
    for (int z = 0; z < base.count(s); ++z) {
      Dendrex d = base.dendrex(s, z);
      d.push_back(0);
      x.add(s, d);
      if (s == c->linear(2)) {
        d.back() = 1;
        x.add(s, d);
      }
    }
  EXPECT_TRUE(is_inner_kan(x));
  EXPECT_FALSE(is_strict(x));
}

TEST(Deletion, TopDeletionsBreakKan) {
  auto c = catalog(2, 3);
  for (auto p : {share(make_comm(2)), share(make_as(2))}) {
    auto x = nerve(p, c);
    auto rep = top_shape_deletions(x);
    EXPECT_GT(rep.deletions, 0);
    EXPECT_EQ(rep.broken, rep.deletions) << rep.first_survivor;
    // direct check of every deletion
    long direct = 0;
    for (int s = 0; s < c->size(); ++s)
      if (c->shape(s).vertex_count() == 2)
        for (int z = 0; z < x.count(s); ++z) direct += !is_inner_kan(delete_dendrex(x, s, z));
    EXPECT_EQ(direct, rep.broken);
  }
}

TEST(Deletion, DoubledSetSurvivesDeletion) {
  auto c = catalog(2, 3);
  auto base = nerve(share(make_comm(2)), c);
  DendroidalSet x(
      c,
      [&base](int r, int t, const std::vector<int>& m, const Dendrex& d) {
        Dendrex core(d.begin(), d.end() - 1);
        Dendrex out = base.restrict_data(r, t, m, core);
        out.push_back(r == t && d.back() == 1 ? 1 : 0);
        return out;
      },
      "doubled");
  for (int s = 0; s < c->size(); ++s)
    for (int z = 0; z < base.count(s); ++z) {
      Dendrex d = base.dendrex(s, z);
      d.push_back(0);
      x.add(s, d);
      if (c->shape(s).vertex_count() == 2) {
        d.back() = 1;
        x.add(s, d);
      }
    }
  auto rep = top_shape_deletions(x);
  EXPECT_EQ(rep.broken, 0);
  EXPECT_FALSE(rep.first_survivor.empty());
}

TEST(Deletion, CorollaClosureBreaksKan) {
  auto c = catalog(2, 5);
  auto x = nerve(share(make_comm(4)), c);
  ASSERT_TRUE(is_strict(x));
  int c3 = c->corolla(3);
  auto y = delete_closure(x, c3, 0);
  EXPECT_EQ(y.count(c3), 0);
  EXPECT_TRUE(validate_presheaf(y).ok) << validate_presheaf(y).failure;
  auto r = inner_kan_report(y, false);
  EXPECT_FALSE(r.holds);
}

TEST(Kan, RepresentableHornOfItselfHasIdentityFiller) {
  auto c = catalog(3, 4);
  for (int s = 0; s < c->size(); ++s) {
    const Tree& t = c->shape(s);
    if (t.inner_edges().empty()) continue;
    auto rep = representable(t, c);
    std::vector<int> id(t.size());
    for (int i = 0; i < t.size(); ++i) id[i] = i;
    int z = rep.find(s, id);
    const auto& fs = c->faces(s);
    for (int a = 0; a < static_cast<int>(fs.size()); ++a) {
      if (fs[a].face.kind != FaceKind::Inner) continue;
      auto fill = fill_horn(rep, restriction_family(rep, s, a, z));
      EXPECT_EQ(fill, std::vector<int>{z});
    }
  }
}

TEST(Normality, AsNormalCommNot) {
  auto c = catalog(2, 3);
  std::string w;
  EXPECT_TRUE(is_normal(nerve(share(make_as(2)), c), &w)) << w;
  EXPECT_FALSE(is_normal(nerve(share(make_comm(2)), c), &w));
  EXPECT_FALSE(w.empty());
  EXPECT_TRUE(is_normal(representable(Tree::corolla(2), c)));
  auto e = empty_dset(c);
  auto as = nerve(share(make_as(2)), c);
  EXPECT_TRUE(is_normal_mono(empty_map(e, as)));
  auto comm = nerve(share(make_comm(2)), c);
  EXPECT_FALSE(is_normal_mono(empty_map(e, comm)));
}

TEST(Simplicial, StandardSimplexAndAction) {
  auto s = standard_simplex(2, 3);
  EXPECT_TRUE(validate_simplicial(s));
  EXPECT_EQ(s.count, (std::vector<int>{3, 6, 10, 15}));
  // simplices are monotone sequences listed lexicographically
  std::vector<std::vector<std::vector<int>>> seqs(4);
  for (int k = 0; k <= 3; ++k) {
    std::vector<int> cur(k + 1);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == k + 1) return seqs[k].push_back(cur);
      for (int v = lo; v <= 2; ++v) {
        cur[pos] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, 0);
  }
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) {
      std::vector<int> th(m + 1);
      std::function<void(int, int)> rec = [&](int pos, int lo) {
        if (pos == m + 1) {
          for (int y = 0; y < s.count[n]; ++y) {
            std::vector<int> expect;
            for (int v : th) expect.push_back(seqs[n][y][v]);
            int got = simplicial_act(s, th, n, y);
            ASSERT_EQ(seqs[m][got], expect);
          }
          return;
        }
        for (int v = lo; v <= n; ++v) {
          th[pos] = v;
          rec(pos + 1, v);
        }
      };
      rec(0, 0);
    }
}

TEST(Simplicial, CategoryNerveIsKan) {
  auto s = category_nerve(iso_category(), 3);
  EXPECT_TRUE(validate_simplicial(s));
  EXPECT_TRUE(simplicial_inner_kan(s));
  EXPECT_TRUE(simplicial_inner_kan(standard_simplex(2, 3)));
}

TEST(Simplicial, LowerUpperRoundTrip) {
  auto c = catalog(3, 4);
  for (const auto& s : {standard_simplex(1, 3), standard_simplex(2, 3), category_nerve(iso_category(), 3)}) {
    auto x = i_lower(s, c);
    EXPECT_TRUE(validate_presheaf(x).ok) << validate_presheaf(x).failure;
    auto back = i_upper(x);
    EXPECT_EQ(back, s);
    for (int sh = 0; sh < c->size(); ++sh)
      if (!c->shape(sh).is_linear()) EXPECT_EQ(x.count(sh), 0);
  }
}

TEST(Simplicial, UpperOfNerveIsCategoryNerve) {
  auto c = catalog(3, 4);
  for (auto p : {share(make_as(3)), share(j_lower(iso_category())), share(j_lower(arrow_category()))}) {
    auto x = nerve(p, c);
    auto up = i_upper(x);
    EXPECT_TRUE(validate_simplicial(up));
    auto cat = j_upper(*p);
    std::vector<std::vector<std::vector<int>>> chains;
    auto cn = category_nerve(cat, 3, &chains);
    auto ops = p->ops_of_arity(1);
    std::vector<std::vector<int>> bij(4);
    for (int n = 0; n <= 3; ++n) {
      std::map<std::vector<int>, int> pos;
      for (int y = 0; y < static_cast<int>(chains[n].size()); ++y) pos[chains[n][y]] = y;
      for (int y = 0; y < up.count[n]; ++y) {
        const auto& d = x.dendrex(c->linear(n), y);
        std::vector<int> key;
        if (n == 0) {
          key = {d[0]};
        } else {
          for (int i = 1; i <= n; ++i) {
            int f = d[n + 1 + (n - i)];
            key.push_back(static_cast<int>(std::find(ops.begin(), ops.end(), f) - ops.begin()));
          }
        }
        bij[n].push_back(pos.count(key) ? pos[key] : -1);
      }
    }
    EXPECT_TRUE(simplicial_iso(up, cn, bij)) << p->name;
  }
}

TEST(Tau, RepresentableGivesFreeOperad) {
  auto c = catalog(2, 3);
  for (const Tree& t : {l(2), Tree::corolla(2)}) {
    auto pres = tau_presentation(representable(t, c));
    auto r = tabulate(pres, 2, 2);
    ASSERT_EQ(r.status, Verdict::Yes) << r.reason;
    EXPECT_TRUE(has_isomorphism(r.operad, free_operad_on_tree(t)));
  }
  auto eta = tau_presentation(representable(Tree::eta(), c));
  EXPECT_EQ(eta.colors.size(), 1u);
  EXPECT_TRUE(eta.generators.empty());
  auto r = tabulate(eta, 2, 2);
  ASSERT_EQ(r.status, Verdict::Yes);
  EXPECT_EQ(r.operad.size(), 1);
}

TEST(Tau, NerveOfAsGivesAs) {
  auto c = catalog(2, 3);
  auto pres = tau_presentation(nerve(share(make_as(2)), c));
  validate_presentation(pres);
  auto r = tabulate(pres, 2, 2);
  ASSERT_EQ(r.status, Verdict::Yes) << r.reason;
  EXPECT_TRUE(has_isomorphism(r.operad, make_as(2)));
}

TEST(Equivalence, InvertibleUnaryDendrices) {
  auto c = catalog(1, 2);
  int s = c->linear(1);
  auto iso = share(j_lower(iso_category()));
  auto x = nerve(iso, c);
  for (int z = 0; z < x.count(s); ++z) EXPECT_TRUE(is_equivalence_dendrex_in_nerve(*iso, c->shape(s), x.dendrex(s, z)));
  auto arrow = share(j_lower(arrow_category()));
  auto y = nerve(arrow, c);
  int non = 0;
  for (int z = 0; z < y.count(s); ++z) non += !is_equivalence_dendrex_in_nerve(*arrow, c->shape(s), y.dendrex(s, z));
  EXPECT_EQ(non, 1);
}

#include "dendro/perm.hpp"

#include <algorithm>
#include <numeric>

namespace dendro {

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

bool is_identity(const Perm& p) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i)
    if (p[i] != i) return false;
  return true;
}

Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (int i = 0; i < static_cast<int>(p.size()); ++i) q[p[i]] = i;
  return q;
}

Perm compose_perm(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (size_t k = 0; k < q.size(); ++k) r[k] = p[q[k]];
  return r;
}

int factorial(int n) {
  int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

int perm_rank(const Perm& p) {
  int n = static_cast<int>(p.size());
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (p[j] < p[i]) ++smaller;
    rank += smaller * factorial(n - 1 - i);
  }
  return rank;
}

Perm perm_unrank(int n, int rank) {
  std::vector<int> pool = identity_perm(n);
  Perm p;
  for (int i = 0; i < n; ++i) {
    int f = factorial(n - 1 - i);
    int k = rank / f;
    rank %= f;
    p.push_back(pool[k]);
    pool.erase(pool.begin() + k);
  }
  return p;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace dendro

#pragma once

#include <vector>

namespace dendro {

using Perm = std::vector<int>;

Perm identity_perm(int n);
bool is_identity(const Perm& p);
Perm inverse(const Perm& p);
// (p * q)[k] = p[q[k]]
Perm compose_perm(const Perm& p, const Perm& q);
int factorial(int n);
// Lehmer rank in [0, n!)
int perm_rank(const Perm& p);
Perm perm_unrank(int n, int rank);
std::vector<Perm> all_perms(int n);

}  // namespace dendro

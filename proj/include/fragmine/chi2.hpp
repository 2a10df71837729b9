#pragma once

#include <stdexcept>

namespace fragmine {

// 2x2 contingency table of pattern presence vs class.
struct ContingencyTable {
  int p;  // actives containing the pattern
  int n;  // inactives containing the pattern
  int P;  // total actives
  int N;  // total inactives
};

// Pearson chi-square statistic of the 2x2 table; 0 when any marginal is 0.
double chi2(const ContingencyTable& t);

// Convex upper bound max(chi2(p,0), chi2(0,n)); admissible for any
// specialization with p' <= p, n' <= n.
double chi2_upper_bound(const ContingencyTable& t);

// Critical value of the chi-square distribution with 1 degree of freedom at
// confidence 0.95, 0.99 or 0.999; other levels are rejected.
double chi2_quantile(double confidence);

}  // namespace fragmine

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oscint {

// Table of the recursion
//   C_{k,0} = (-1/2)^{k+1},
//   C_{k,l+1} = sum_{i=0}^{k} (-1)^{i+k} (i+1+2l) / 2^{k+1-i} * C_{i,l},
// which weights every term of the integration-by-parts representation.
// Entries are deterministic and column-monotone: growing either extent never
// changes previously computed entries.
class CoefficientTable {
  public:
    static constexpr int kMaxExtent = 60;  // growth guard; doubles stay finite well past this

    CoefficientTable(int k_max, int l_max);

    double at(int k, int l) const;
    int k_max() const { return kmax_; }
    int l_max() const { return lmax_; }

    void write_csv(std::ostream& os) const;  // columns: k,l,value

  private:
    int kmax_, lmax_;
    std::vector<double> v_;
};

struct CoefficientIdentityReport {
    std::string id;
    double max_rel_residual = 0.0;
    int worst_k = -1, worst_l = -1;
    bool pass = true;
};

// The three identities used in the derivation of the iterated formula:
//   C_{n,0} = -1/2 C_{n-1,0}
//   C_{0,m+1} = (1+2m)/2 C_{0,m}
//   C_{K,m+1} - (K+2+2m) C_{K+1,m} = -2 C_{K+1,m+1}
std::vector<CoefficientIdentityReport> check_proof_identities(const CoefficientTable& t,
                                                              double rel_tol = 1e-13);

// Exact dyadic-rational replay of the recursion, for certifying the float
// table. Validation-only: an order of magnitude slower than the double path.
class ExactCoefficientTable {
  public:
    ExactCoefficientTable(int k_max, int l_max);
    ~ExactCoefficientTable();
    ExactCoefficientTable(ExactCoefficientTable&&) noexcept;
    ExactCoefficientTable& operator=(ExactCoefficientTable&&) noexcept;

    double at_double(int k, int l) const;
    int k_max() const;
    int l_max() const;

  private:
    struct Impl;
    Impl* impl_;
};

// Largest relative deviation between the float table and the exact oracle.
double coefficient_table_deviation(const CoefficientTable& t);

}  // namespace oscint

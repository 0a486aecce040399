#pragma once

#include <vector>

#include "singerlat/gfield.hpp"
#include "singerlat/matrix.hpp"
#include "singerlat/series.hpp"

namespace singerlat {

inline constexpr int kDefaultPrecision = 24;

// Read-only data shared by the algebra, building and lattice modules:
// field pair, the norm-equation solution X and its powers, and the
// Frobenius matrices on the power basis of the generator.
class Context {
public:
    explicit Context(FieldParams params, int precision = kDefaultPrecision, int max_precision = 0);

    const FieldParams& params() const { return params_; }
    const FiniteField& K() const { return params_.K(); }
    const FiniteField& E() const { return params_.E(); }
    unsigned d() const { return params_.d(); }
    int precision() const { return precision_; }
    int max_precision() const { return max_precision_; }

    // X at max_precision and the twisted powers X sigma(X) ... sigma^(j-1)(X)
    // for j < d, so that tau^j maps to (X sigma)^j. They equal X^j when X
    // has coefficients in K.
    const Series& X() const { return x_powers_[1]; }
    const Series& X_power(unsigned j) const { return x_powers_[j]; }
    // sigma^j on E as a K-linear map in the power basis.
    const ConstMatrix& frobenius_matrix(unsigned j) const { return frob_[j % d()]; }
    // Multiplication by c in the power basis.
    ConstMatrix mult_matrix(Elem c) const;

private:
    FieldParams params_;
    int precision_;
    int max_precision_;
    std::vector<Series> x_powers_;
    std::vector<ConstMatrix> frob_;
};

}  // namespace singerlat

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace dlsr {

using Signal = Eigen::VectorXd;

/// Eigendecomposition of a symmetric PSD matrix with eigenvalues ascending
/// and a fixed sign convention (first nonzero entry of each eigenvector
/// positive), so repeated runs produce identical bases.
struct SpectralBasis {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXd eigenvectors;  // column k pairs with eigenvalues(k)

    int size() const { return static_cast<int>(eigenvalues.size()); }
};

SpectralBasis eigendecompose(const Eigen::MatrixXd& l);

/// Cutoff frequency and the number of in-band eigenvalues (lambda_k <= omega,
/// inclusive). Eigenvalues are ascending, so the band is the prefix [0, dim).
struct BandSpec {
    double omega = 0.0;
    int dim = 0;
};

BandSpec make_band(const SpectralBasis& basis, double omega);

Signal gft(const Signal& f, const SpectralBasis& basis);
Signal igft(const Signal& coeffs, const SpectralBasis& basis);

enum class Side { low, high };

/// Orthogonal projection onto the bandlimited subspace (low) or its
/// complement (high). The two projections sum to the input exactly.
Signal project(const Signal& f, const BandSpec& band, const SpectralBasis& basis, Side side);

/// Columns are the lowpass impulses P_omega delta_u for u in sample order.
Eigen::MatrixXd frame_elements(const std::vector<int>& sample_set, const BandSpec& band,
                               const SpectralBasis& basis);

/// T f = sum_u f(u) P_omega delta_u.
Signal frame_operator_apply(const Signal& f, const Eigen::MatrixXd& elements,
                            const std::vector<int>& sample_set);

/// (A, B) = extreme eigenvalues of U_omega^T I_S U_omega. A > 0 iff the
/// sample set is a uniqueness set for the band.
std::pair<double, double> frame_bounds(const std::vector<int>& sample_set, const BandSpec& band,
                                       const SpectralBasis& basis);

/// Operator norm of T acting on all of R^n (largest singular value of
/// P_omega I_S); at most 1.
double frame_operator_norm(const std::vector<int>& sample_set, const BandSpec& band,
                           const SpectralBasis& basis);

/// Debug export: eigenvalue column followed by one column per eigenvector.
void save_spectrum_csv(const SpectralBasis& basis, const std::string& path);

}  // namespace dlsr

#include "core/spectral.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace dlsr {

SpectralBasis eigendecompose(const Eigen::MatrixXd& l) {
    if (l.rows() != l.cols())
        throw std::invalid_argument("eigendecompose: matrix must be square");
    double asym = (l - l.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10)
        throw std::invalid_argument("eigendecompose: matrix not symmetric (max asymmetry " +
                                    std::to_string(asym) + ")");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(l);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: eigensolver failed");

    SpectralBasis basis;
    basis.eigenvalues = solver.eigenvalues();
    basis.eigenvectors = solver.eigenvectors();
    // Sign convention: first nonzero entry of each eigenvector positive.
    for (int k = 0; k < basis.size(); ++k) {
        for (int i = 0; i < basis.size(); ++i) {
            double x = basis.eigenvectors(i, k);
            if (std::abs(x) > 1e-12) {
                if (x < 0.0) basis.eigenvectors.col(k) = -basis.eigenvectors.col(k);
                break;
            }
        }
    }
    return basis;
}

BandSpec make_band(const SpectralBasis& basis, double omega) {
    BandSpec band;
    band.omega = omega;
    band.dim = 0;
    while (band.dim < basis.size() && basis.eigenvalues(band.dim) <= omega) ++band.dim;
    return band;
}

Signal gft(const Signal& f, const SpectralBasis& basis) {
    if (f.size() != basis.size())
        throw std::invalid_argument("gft: signal/basis dimension mismatch");
    return basis.eigenvectors.transpose() * f;
}

Signal igft(const Signal& coeffs, const SpectralBasis& basis) {
    if (coeffs.size() != basis.size())
        throw std::invalid_argument("igft: coefficient/basis dimension mismatch");
    return basis.eigenvectors * coeffs;
}

Signal project(const Signal& f, const BandSpec& band, const SpectralBasis& basis, Side side) {
    if (f.size() != basis.size())
        throw std::invalid_argument("project: signal/basis dimension mismatch");
    const auto low_basis = basis.eigenvectors.leftCols(band.dim);
    Signal low = low_basis * (low_basis.transpose() * f);
    return side == Side::low ? low : Signal(f - low);
}

Eigen::MatrixXd frame_elements(const std::vector<int>& sample_set, const BandSpec& band,
                               const SpectralBasis& basis) {
    if (sample_set.empty())
        throw std::invalid_argument("frame_elements: empty sample set");
    const auto low_basis = basis.eigenvectors.leftCols(band.dim);
    Eigen::MatrixXd elements(basis.size(), sample_set.size());
    for (std::size_t i = 0; i < sample_set.size(); ++i) {
        int u = sample_set[i];
        if (u < 0 || u >= basis.size())
            throw std::invalid_argument("frame_elements: vertex out of range");
        // P_omega delta_u = U_omega U_omega^T delta_u.
        elements.col(i) = low_basis * low_basis.row(u).transpose();
    }
    return elements;
}

Signal frame_operator_apply(const Signal& f, const Eigen::MatrixXd& elements,
                            const std::vector<int>& sample_set) {
    if (elements.cols() != static_cast<Eigen::Index>(sample_set.size()))
        throw std::invalid_argument("frame_operator_apply: elements/sample set mismatch");
    Signal out = Signal::Zero(elements.rows());
    for (std::size_t i = 0; i < sample_set.size(); ++i)
        out += f(sample_set[i]) * elements.col(i);
    return out;
}

std::pair<double, double> frame_bounds(const std::vector<int>& sample_set, const BandSpec& band,
                                       const SpectralBasis& basis) {
    if (sample_set.empty())
        throw std::invalid_argument("frame_bounds: empty sample set");
    if (band.dim == 0) return {0.0, 0.0};
    Eigen::MatrixXd rows(sample_set.size(), band.dim);
    for (std::size_t i = 0; i < sample_set.size(); ++i)
        rows.row(i) = basis.eigenvectors.row(sample_set[i]).head(band.dim);
    Eigen::MatrixXd gram = rows.transpose() * rows;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    return {solver.eigenvalues().minCoeff(), solver.eigenvalues().maxCoeff()};
}

double frame_operator_norm(const std::vector<int>& sample_set, const BandSpec& band,
                           const SpectralBasis& basis) {
    // T = P_omega I_S as an n x n matrix; norm is its largest singular value.
    const auto low_basis = basis.eigenvectors.leftCols(band.dim);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(basis.size(), basis.size());
    for (int u : sample_set) t.col(u) = low_basis * low_basis.row(u).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(t);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

void save_spectrum_csv(const SpectralBasis& basis, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_spectrum_csv: cannot open " + path);
    out.precision(17);
    out << "row";
    for (int k = 0; k < basis.size(); ++k) out << ",u" << k;
    out << "\n";
    out << "lambda";
    for (int k = 0; k < basis.size(); ++k) out << "," << basis.eigenvalues(k);
    out << "\n";
    for (int i = 0; i < basis.size(); ++i) {
        out << "v" << i;
        for (int k = 0; k < basis.size(); ++k) out << "," << basis.eigenvectors(i, k);
        out << "\n";
    }
}

}  // namespace dlsr

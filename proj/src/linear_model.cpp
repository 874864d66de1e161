#include "distcov/linear_model.hpp"

#include <Eigen/QR>

#include <sstream>

#include "distcov/errors.hpp"

namespace distcov {

LinearModelFit fit_least_squares(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
    const Eigen::Index n = x.rows();
    const Eigen::Index p = x.cols();
    if (y.rows() != n)
        throw DataError(DataError::Kind::SampleSizeMismatch,
                        "fit_least_squares: X and Y row counts differ");
    if (n <= p + 1)
        throw DataError(DataError::Kind::DegenerateSample,
                        "fit_least_squares requires n > p + 1 observations");
    if (!x.allFinite() || !y.allFinite())
        throw DataError(DataError::Kind::NonFinite, "fit_least_squares: non-finite input");

    Eigen::MatrixXd design(n, p + 1);
    design.col(0).setOnes();
    design.rightCols(p) = x;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    const Eigen::Index rank = qr.rank();
    if (rank < p + 1) {
        // Pivoting orders columns by decreasing contribution; everything past
        // the numerical rank is linearly dependent on what precedes it.
        std::ostringstream msg;
        msg << "design matrix is rank deficient (rank " << rank << " of " << p + 1
            << "); dependent columns:";
        const auto& piv = qr.colsPermutation().indices();
        for (Eigen::Index i = rank; i < p + 1; ++i) {
            const Eigen::Index col = piv[i];
            if (col == 0)
                msg << " intercept";
            else
                msg << " x" << col;
        }
        throw DataError(DataError::Kind::RankDeficient, msg.str());
    }

    LinearModelFit fit;
    fit.coefficients = qr.solve(y);
    fit.fitted = design * fit.coefficients;
    fit.residuals = y - fit.fitted;
    return fit;
}

} // namespace distcov

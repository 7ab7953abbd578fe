#pragma once

#include <Eigen/Dense>

#include "calderon/conformal.hpp"
#include "calderon/fourier.hpp"

namespace calderon {

// Apply the Hilbert transform of the domain to a function given by its
// coefficients in arc length. Pipeline: pull back to the angle variable,
// apply the disk DtN there, take the angle antiderivative (legitimate since
// a * ds/dtheta = 1), subtract the arc-length-weighted mean, then project
// onto e^{ins} with ds = speed * dtheta as the integration measure.
Eigen::VectorXcd hilbert_apply(const boundary_parametrization& param,
                               const Eigen::VectorXcd& f);

// Hilbert matrix of the image domain in arc-length parametrization. Entry
// (m, n) is the coefficient of e^{ims} in the image of e^{ins}: row index is
// the output frequency, column index the input frequency. The map must
// already be length normalized; its boundary must be simple and immersed.
// grid_size 0 selects forward_grid(n_max).
Eigen::MatrixXcd build_hilbert_matrix(const conformal_map& map, int n_max,
                                      int grid_size = 0);

// lambda_{mn} = m * h_{mn}.
Eigen::MatrixXcd dtn_from_hilbert(const Eigen::MatrixXcd& h);

// Inverse of the above: h_{mn} = lambda_{mn} / m, with the m = 0 row zero.
Eigen::MatrixXcd hilbert_from_dtn(const Eigen::MatrixXcd& lambda);

// Arc-length Fourier coefficients of the boundary curve itself, computed on
// the forward grid by the same weighted projection the matrix build uses.
Eigen::VectorXcd boundary_coeffs_arclength(const conformal_map& map, int n_max,
                                           int grid_size = 0);

}  // namespace calderon

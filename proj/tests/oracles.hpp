// Slow, independent reference computations used to check the library.

#pragma once

#include <complex>
#include <vector>

#include "afc/sequencer.hpp"
#include "afc/spectral.hpp"

namespace oracle {

using cplx = std::complex<double>;

// sum_j p_j l(f_k - f_j) df with the causal kernel (1/pi)(g/2 - i x)/(x^2 + g^2/4).
// Only meaningful for profiles that vanish near the grid edges.
std::vector<cplx> lorentzian_direct(const std::vector<double>& p, const afc::SpectralGrid& grid, double fwhm);

// (1/pi) PV integral of g(f') / (f - f') over the grid cells, singularity subtracted.
std::vector<double> hilbert_pv(const std::vector<double>& g, const afc::SpectralGrid& grid);

// Riemann sum of a square-pulse train, e(t) = sum over samples n*dt inside each pulse.
cplx square_train_dft(const afc::Sequence& seq, double dt, double f);

// O(N^2) circular convolution: out_n = sum_j H_j X_j exp(+i 2 pi j n / N) / N with X the
// direct DFT of x and H_j given at signed bin j (j >= N/2 means j - N).
std::vector<cplx> filter_direct(const std::vector<cplx>& x, const std::vector<cplx>& h_bins);

// Rotation of (u, v, w) by angle |W| t about W (Rodrigues).
void rotate(double& u, double& v, double& w, double wx, double wy, double wz, double t);

double relative_l2(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace oracle

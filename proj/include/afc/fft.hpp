// Thin FFTW wrapper. Forward uses exp(-i 2 pi k n / N); inverse is normalized by 1/N.

#pragma once

#include <complex>
#include <vector>

namespace afc::fft {

using cvec = std::vector<std::complex<double>>;

void forward_inplace(cvec& data);
void inverse_inplace(cvec& data);

inline cvec forward(cvec data) {
  forward_inplace(data);
  return data;
}

inline cvec inverse(cvec data) {
  inverse_inplace(data);
  return data;
}

}  // namespace afc::fft

#ifndef ZK_FFT_HPP
#define ZK_FFT_HPP

#include <complex>
#include <vector>

namespace zk::fft {

// In-place complex DFTs of length n, any n >= 1.  forward applies e^{-i...} and
// divides by n so that a plane wave of unit amplitude yields a unit coefficient;
// backward applies e^{+i...} with no scaling.  Plan creation is serialized
// internally; execution is safe to call from multiple threads.
void forward(std::complex<double>* data, int n);
void backward(std::complex<double>* data, int n);

inline void forward(std::vector<std::complex<double>>& v) { forward(v.data(), static_cast<int>(v.size())); }
inline void backward(std::vector<std::complex<double>>& v) { backward(v.data(), static_cast<int>(v.size())); }

} // namespace zk::fft

#endif

#ifndef CTAOI_DETAIL_BLUESTEIN_HPP
#define CTAOI_DETAIL_BLUESTEIN_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace ctaoi::detail {

/// Length-n DFT for arbitrary n (code orders are prime) through a chirp-z
/// convolution on a power-of-two FFT, so each transform is O(n log n).
template <typename Scalar>
class Bluestein {
 public:
  using Complex = std::complex<Scalar>;

  Bluestein() = default;

  explicit Bluestein(std::size_t n) : n_(n) {
    padded_ = 1;
    while (padded_ < 2 * n_ - 1) padded_ <<= 1;
    chirp_.resize(n_);
    const std::uint64_t period = 2 * static_cast<std::uint64_t>(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      // exp(-i pi k^2 / n) is periodic in k^2 with period 2n; reduce first
      // to keep the phase exact for large n.
      const std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % period;
      const long double angle = -3.14159265358979323846264338327950288L * static_cast<long double>(k2) /
                                static_cast<long double>(n_);
      chirp_[k] = Complex(static_cast<Scalar>(std::cos(angle)), static_cast<Scalar>(std::sin(angle)));
    }
    std::vector<Complex> kernel(padded_, Complex(0));
    kernel[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n_; ++k) {
      kernel[k] = std::conj(chirp_[k]);
      kernel[padded_ - k] = std::conj(chirp_[k]);
    }
    fft().fwd(kernel_spectrum_, kernel);
  }

  std::size_t size() const { return n_; }

  /// out[f] = sum_k in[k] exp(-2 pi i f k / n)
  void forward(const std::vector<Complex>& in, std::vector<Complex>& out) const {
    std::vector<Complex> a(padded_, Complex(0));
    for (std::size_t k = 0; k < n_; ++k) a[k] = in[k] * chirp_[k];
    std::vector<Complex> spec;
    fft().fwd(spec, a);
    for (std::size_t i = 0; i < padded_; ++i) spec[i] *= kernel_spectrum_[i];
    std::vector<Complex> conv;
    fft().inv(conv, spec);
    out.resize(n_);
    for (std::size_t f = 0; f < n_; ++f) out[f] = conv[f] * chirp_[f];
  }

  /// out[k] = (1/n) sum_f in[f] exp(+2 pi i f k / n)
  void inverse(const std::vector<Complex>& in, std::vector<Complex>& out) const {
    std::vector<Complex> conj_in(n_);
    for (std::size_t f = 0; f < n_; ++f) conj_in[f] = std::conj(in[f]);
    forward(conj_in, out);
    const Scalar scale = Scalar(1) / static_cast<Scalar>(n_);
    for (auto& v : out) v = std::conj(v) * scale;
  }

 private:
  // Eigen's FFT caches plans internally, so each thread keeps its own.
  static Eigen::FFT<Scalar>& fft() {
    thread_local Eigen::FFT<Scalar> instance;
    return instance;
  }

  std::size_t n_ = 0;
  std::size_t padded_ = 0;
  std::vector<Complex> chirp_;
  std::vector<Complex> kernel_spectrum_;
};

}  // namespace ctaoi::detail

#endif  // CTAOI_DETAIL_BLUESTEIN_HPP

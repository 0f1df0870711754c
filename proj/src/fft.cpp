#include "az/transforms.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace az {

namespace {

bool is_pow2(Index n) { return n > 0 && (n & (n - 1)) == 0; }

Index next_pow2(Index n)
{
    Index m = 1;
    while (m < n)
        m <<= 1;
    return m;
}

std::vector<Complex> make_twiddles(Index n)
{
    std::vector<Complex> t(static_cast<std::size_t>(std::max<Index>(n / 2, 1)));
    for (Index j = 0; j < n / 2; ++j) {
        const double a = -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        t[static_cast<std::size_t>(j)] = {std::cos(a), std::sin(a)};
    }
    return t;
}

}  // namespace

FftPlan::FftPlan(Index length)
    : length_(length)
    , pow2_(is_pow2(length))
{
    if (length < 1)
        throw ShapeError("FftPlan: length must be positive, got " + std::to_string(length));

    if (pow2_) {
        work_    = length;
        twiddle_ = make_twiddles(work_);
        return;
    }

    work_    = next_pow2(2 * length - 1);
    twiddle_ = make_twiddles(work_);

    const auto L = static_cast<std::uint64_t>(length);
    chirp_.resize(static_cast<std::size_t>(length));
    for (std::uint64_t k = 0; k < L; ++k) {
        // k^2 mod 2L keeps the phase argument small
        const double a = -std::numbers::pi * static_cast<double>((k * k) % (2 * L)) / static_cast<double>(L);
        chirp_[k] = {std::cos(a), std::sin(a)};
    }

    std::vector<Complex> b(static_cast<std::size_t>(work_), Complex(0.0));
    b[0] = std::conj(chirp_[0]);
    for (Index j = 1; j < length; ++j) {
        b[static_cast<std::size_t>(j)]         = std::conj(chirp_[static_cast<std::size_t>(j)]);
        b[static_cast<std::size_t>(work_ - j)] = std::conj(chirp_[static_cast<std::size_t>(j)]);
    }
    radix2(b.data(), work_, twiddle_, false);
    filter_hat_ = std::move(b);
}

void FftPlan::radix2(Complex* data, Index n, const std::vector<Complex>& twiddle, bool conj_sign) const
{
    // bit reversal
    for (Index i = 1, j = 0; i < n; ++i) {
        Index bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(data[i], data[j]);
    }

    for (Index len = 2; len <= n; len <<= 1) {
        const Index half   = len / 2;
        const Index stride = n / len;
        for (Index start = 0; start < n; start += len) {
            for (Index k = 0; k < half; ++k) {
                Complex w = twiddle[static_cast<std::size_t>(k * stride)];
                if (conj_sign)
                    w = std::conj(w);
                const Complex u = data[start + k];
                const Complex t = w * data[start + k + half];
                data[start + k]        = u + t;
                data[start + k + half] = u - t;
            }
        }
    }
}

void FftPlan::transform(Complex* data, bool conj_sign) const
{
    if (pow2_) {
        radix2(data, length_, twiddle_, conj_sign);
        return;
    }

    // the conjugate-sign transform is conj(F conj(v))
    std::vector<Complex> a(static_cast<std::size_t>(work_), Complex(0.0));
    for (Index l = 0; l < length_; ++l) {
        const Complex x = conj_sign ? std::conj(data[l]) : data[l];
        a[static_cast<std::size_t>(l)] = x * chirp_[static_cast<std::size_t>(l)];
    }
    radix2(a.data(), work_, twiddle_, false);
    for (Index j = 0; j < work_; ++j)
        a[static_cast<std::size_t>(j)] *= filter_hat_[static_cast<std::size_t>(j)];
    radix2(a.data(), work_, twiddle_, true);

    const double scale = 1.0 / static_cast<double>(work_);
    for (Index k = 0; k < length_; ++k) {
        const Complex y = a[static_cast<std::size_t>(k)] * scale * chirp_[static_cast<std::size_t>(k)];
        data[k] = conj_sign ? std::conj(y) : y;
    }
}

ComplexVector FftPlan::forward(const ComplexVector& v) const
{
    if (v.size() != length_)
        throw ShapeError("FftPlan: length " + std::to_string(length_) + " plan applied to length " +
                         std::to_string(v.size()));
    ComplexVector out = v;
    transform(out.data(), false);
    return out;
}

ComplexVector FftPlan::backward(const ComplexVector& v) const
{
    if (v.size() != length_)
        throw ShapeError("FftPlan: length " + std::to_string(length_) + " plan applied to length " +
                         std::to_string(v.size()));
    ComplexVector out = v;
    transform(out.data(), true);
    return out;
}

ComplexVector FftPlan::inverse(const ComplexVector& v) const
{
    return backward(v) / static_cast<double>(length_);
}

ComplexVector dft(const ComplexVector& v) { return FftPlan(v.size()).forward(v); }

ComplexVector idft(const ComplexVector& v) { return FftPlan(v.size()).inverse(v); }

ComplexMatrix dft_matrix(Index length)
{
    ComplexMatrix F(length, length);
    const auto L = static_cast<std::uint64_t>(length);
    for (Index k = 0; k < length; ++k)
        for (Index l = 0; l < length; ++l) {
            const auto   kl = (static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(l)) % L;
            const double a  = -2.0 * std::numbers::pi * static_cast<double>(kl) / static_cast<double>(L);
            F(k, l) = {std::cos(a), std::sin(a)};
        }
    return F;
}

}  // namespace az

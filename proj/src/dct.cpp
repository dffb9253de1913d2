#include "dct.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace c2g::detail {

namespace {

// The FFTW planner is not reentrant; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

AlignedBuffer::AlignedBuffer(std::size_t n) : data_(fftw_alloc_real(n)), size_(n) {
  if (data_ == nullptr) throw std::bad_alloc();
}

AlignedBuffer::~AlignedBuffer() { fftw_free(data_); }

struct Dct2::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

Dct2::Dct2(int width, int height) : width_(width), height_(height), plans_(new Plans) {
  if (width < 1 || height < 1) throw InvalidArgument("DCT dimensions must be positive");
  AlignedBuffer probe(static_cast<std::size_t>(width) * height);
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_r2r_2d(height, width, probe.data(), probe.data(), FFTW_REDFT10,
                                     FFTW_REDFT10, FFTW_ESTIMATE);
  plans_->inverse = fftw_plan_r2r_2d(height, width, probe.data(), probe.data(), FFTW_REDFT01,
                                     FFTW_REDFT01, FFTW_ESTIMATE);
  if (plans_->forward == nullptr || plans_->inverse == nullptr) {
    throw NumericalError("FFTW could not plan a DCT");
  }
}

Dct2::~Dct2() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plans_->forward);
  fftw_destroy_plan(plans_->inverse);
}

void Dct2::forward(AlignedBuffer& buf) const {
  fftw_execute_r2r(plans_->forward, buf.data(), buf.data());
}

void Dct2::inverse(AlignedBuffer& buf) const {
  fftw_execute_r2r(plans_->inverse, buf.data(), buf.data());
}

Plane Dct2::filter(const Plane& in, const Plane& symbol) const {
  if (in.width() != width_ || in.height() != height_) {
    throw DimensionMismatch("DCT filter: plane does not match transform size");
  }
  AlignedBuffer buf(in.size());
  std::copy(in.values().begin(), in.values().end(), buf.data());
  forward(buf);
  const double scale = 1.0 / normalization();
  const auto s = symbol.values();
  for (std::size_t i = 0; i < s.size(); ++i) buf.data()[i] *= s[i] * scale;
  inverse(buf);
  Plane out(width_, height_);
  std::copy(buf.data(), buf.data() + out.size(), out.values().begin());
  return out;
}

}  // namespace c2g::detail

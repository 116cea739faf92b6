// Copyright 2026 The weakval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

namespace weakval::detail {

namespace {

// The FFTW planner is not thread safe; plan execution is.
std::mutex planner_mutex;

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer &) = delete;
    FftwBuffer &operator=(const FftwBuffer &) = delete;
    fftw_complex *data;
};

// Buffers come from fftw_alloc so the planner always sees the same alignment;
// otherwise results could differ in the last bit between calls.
std::vector<std::complex<double>> transform(const std::vector<std::complex<double>> &in, int sign) {
    const std::size_t n = in.size();
    FftwBuffer src(n);
    FftwBuffer dst(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(n), src.data, dst.data, sign, FFTW_ESTIMATE);
    }
    std::copy(in.begin(), in.end(), reinterpret_cast<std::complex<double> *>(src.data));
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    auto *first = reinterpret_cast<const std::complex<double> *>(dst.data);
    return std::vector<std::complex<double>>(first, first + n);
}

}  // namespace

std::vector<std::complex<double>> forward_dft(const std::vector<std::complex<double>> &in) {
    return transform(in, FFTW_FORWARD);
}

std::vector<std::complex<double>> backward_dft(const std::vector<std::complex<double>> &in) {
    return transform(in, FFTW_BACKWARD);
}

}  // namespace weakval::detail

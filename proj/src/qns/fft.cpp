#include "qns/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace qns {

namespace {

// One c2c plan pair per lattice shape.  Planned with FFTW_UNALIGNED so the
// new-array execute functions accept any heap buffer; creation is serialized
// (FFTW planning is not thread-safe), execution is.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

PlanPair& plans_for(const Grid& grid) {
    static std::mutex mutex;
    static std::map<std::array<int, 4>, PlanPair> cache;

    std::array<int, 4> key{grid.dims(), grid.res(0), grid.res(1), grid.res(2)};
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> buf(grid.size());
    auto* p = reinterpret_cast<fftw_complex*>(buf.data());
    int n[3] = {grid.res(0), grid.res(1), grid.res(2)};
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair pp;
    pp.forward = fftw_plan_dft(grid.dims(), n, p, p, FFTW_FORWARD, flags);
    pp.backward = fftw_plan_dft(grid.dims(), n, p, p, FFTW_BACKWARD, flags);
    if (!pp.forward || !pp.backward)
        throw std::runtime_error("fft: plan creation failed");
    return cache.emplace(key, pp).first->second;
}

}  // namespace

std::vector<std::complex<double>> fft_forward(const Grid& grid,
                                              const std::vector<double>& values) {
    if (values.size() != grid.size())
        throw std::invalid_argument("fft_forward: size mismatch");
    std::vector<std::complex<double>> spec(values.begin(), values.end());
    auto& pp = plans_for(grid);
    auto* p = reinterpret_cast<fftw_complex*>(spec.data());
    fftw_execute_dft(pp.forward, p, p);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& c : spec) c *= scale;
    return spec;
}

std::vector<double> fft_backward(const Grid& grid,
                                 const std::vector<std::complex<double>>& spec) {
    if (spec.size() != grid.size())
        throw std::invalid_argument("fft_backward: size mismatch");
    std::vector<std::complex<double>> work(spec);
    auto& pp = plans_for(grid);
    auto* p = reinterpret_cast<fftw_complex*>(work.data());
    fftw_execute_dft(pp.backward, p, p);
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = work[i].real();
    return values;
}

}  // namespace qns

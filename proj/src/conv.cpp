#include "sumset/conv.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace sumset {

namespace {

// Rounding guard: a pre-round residual at or above this aborts the DFT route.
constexpr double kResidualGuard = 0.25;
// Keep |A| * |chunk of B| at or below this so float error stays tiny.
constexpr std::int64_t kChunkProductCap = std::int64_t{1} << 40;

ConvolutionTable naive_counts(const GSet& a, const GSet& b) {
    const Group& g = *a.group();
    ConvolutionTable t;
    t.group = a.group();
    t.counts.assign(static_cast<std::size_t>(g.size()), 0);
    t.backend_used = ConvBackend::Naive;
    a.for_each([&](Elem x) {
        b.for_each([&](Elem y) { ++t.counts[static_cast<std::size_t>(g.add(x, y))]; });
    });
    return t;
}

// FFTW planning is not thread safe; executing a plan on fresh arrays is.
// Plans are created with FFTW_UNALIGNED so they accept any buffer.
class PlanCache {
public:
    struct Plans {
        fftw_plan forward = nullptr;
        fftw_plan backward = nullptr;
    };

    Plans get(const std::vector<std::int64_t>& factors) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(factors);
        if (it != cache_.end()) return it->second;
        std::int64_t n = 1;
        for (auto f : factors) n *= f;
        std::vector<int> dims(factors.begin(), factors.end());
        std::vector<std::complex<double>> scratch(static_cast<std::size_t>(n));
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        Plans p;
        p.forward = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf,
                                  FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.backward = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf,
                                   FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache_.emplace(factors, p);
        return p;
    }

private:
    std::mutex mutex_;
    std::map<std::vector<std::int64_t>, Plans> cache_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

void execute(fftw_plan plan, std::vector<std::complex<double>>& data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

// One A * chunk pass; returns false when the rounding guard trips.
bool dft_accumulate(const GSet& a, const GSet& chunk, std::vector<std::int64_t>& counts,
                    double& max_residual) {
    const Group& g = *a.group();
    const std::size_t n = static_cast<std::size_t>(g.size());
    auto plans = plan_cache().get(g.factors());

    std::vector<std::complex<double>> fa(n, 0.0), fb(n, 0.0);
    a.for_each([&](Elem x) { fa[static_cast<std::size_t>(x)] = 1.0; });
    chunk.for_each([&](Elem x) { fb[static_cast<std::size_t>(x)] = 1.0; });
    execute(plans.forward, fa);
    execute(plans.forward, fb);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    execute(plans.backward, fa);

    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = fa[i].real() * scale;
        double r = std::round(v);
        double residual = std::abs(v - r);
        if (residual > max_residual) max_residual = residual;
        if (residual >= kResidualGuard) return false;
        counts[i] += static_cast<std::int64_t>(r);
    }
    return true;
}

bool dft_counts(const GSet& a, const GSet& b, ConvolutionTable& t) {
    const GroupPtr& gp = a.group();
    t.group = gp;
    t.counts.assign(static_cast<std::size_t>(gp->size()), 0);
    t.backend_used = ConvBackend::DFT;
    t.max_residual = 0.0;

    // Split the smaller operand so |A| * |chunk| stays under the cap.
    const GSet& big = a.size() >= b.size() ? a : b;
    const GSet& small = a.size() >= b.size() ? b : a;
    std::int64_t chunk_card = kChunkProductCap / std::max<std::int64_t>(1, big.size());
    if (chunk_card < 1) chunk_card = 1;

    if (small.size() <= chunk_card) return dft_accumulate(big, small, t.counts, t.max_residual);

    GSet chunk(gp);
    std::int64_t in_chunk = 0;
    bool ok = true;
    small.for_each([&](Elem x) {
        if (!ok) return;
        chunk.insert(x);
        if (++in_chunk == chunk_card) {
            ok = dft_accumulate(big, chunk, t.counts, t.max_residual);
            chunk.clear();
            in_chunk = 0;
        }
    });
    if (ok && in_chunk > 0) ok = dft_accumulate(big, chunk, t.counts, t.max_residual);
    return ok;
}

} // namespace

ConvolutionTable convolution_counts(const GSet& a, const GSet& b, ConvBackend backend) {
    require_same_group(a, b);
    const Group& g = *a.group();

    if (a.empty() || b.empty()) {
        ConvolutionTable t;
        t.group = a.group();
        t.counts.assign(static_cast<std::size_t>(g.size()), 0);
        t.backend_used = ConvBackend::Naive;
        return t;
    }

    if (backend == ConvBackend::Auto) {
        // The DFT costs about 3 n log2 n butterflies; the double loop costs
        // |A||B| inserts. Prefer the DFT once the loop is clearly heavier.
        double n = static_cast<double>(g.size());
        double fft_work = 3.0 * n * std::max(1.0, std::log2(n));
        double naive_work = static_cast<double>(a.size()) * static_cast<double>(b.size());
        backend = naive_work > fft_work ? ConvBackend::DFT : ConvBackend::Naive;
    }

    if (backend == ConvBackend::DFT) {
        ConvolutionTable t;
        if (dft_counts(a, b, t)) return t;
        std::fprintf(stderr,
                     "note: DFT rounding guard tripped (residual %.6f); recomputing exactly\n",
                     t.max_residual);
        return naive_counts(a, b);
    }
    return naive_counts(a, b);
}

GSet support(const ConvolutionTable& t) {
    GSet s(t.group);
    for (std::size_t i = 0; i < t.counts.size(); ++i)
        if (t.counts[i] > 0) s.insert(static_cast<Elem>(i));
    return s;
}

GSet popular_sumset(const ConvolutionTable& t, const Rat& tau, bool closed) {
    GSet s(t.group);
    const auto n = static_cast<__int128>(t.group->size());
    const auto num = static_cast<__int128>(tau.numerator());
    const auto den = static_cast<__int128>(tau.denominator()); // always > 0
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        __int128 lhs = static_cast<__int128>(t.counts[i]) * den;
        __int128 rhs = num * n;
        if (closed ? lhs >= rhs : lhs > rhs) s.insert(static_cast<Elem>(i));
    }
    return s;
}

GSet popular_sumset(const GSet& a, const GSet& b, const Rat& tau, bool closed,
                    ConvBackend backend) {
    return popular_sumset(convolution_counts(a, b, backend), tau, closed);
}

} // namespace sumset

#pragma once

#include "sumset/gset.hpp"

namespace sumset {

enum class ConvBackend {
    Naive, // exact double loop, O(|A||B|)
    DFT,   // multidimensional FFT, O(|G| log |G|)
    Auto,  // pick by estimated work
};

// Representation counts r(c) = #{(a, b) in A x B : a + b = c} for every c.
struct ConvolutionTable {
    GroupPtr group;
    std::vector<std::int64_t> counts;
    ConvBackend backend_used = ConvBackend::Naive;
    // Largest |value - round(value)| seen before rounding (DFT route only).
    double max_residual = 0.0;

    std::int64_t at(Elem c) const { return counts[static_cast<std::size_t>(c)]; }
};

// Computes the representation counts with the requested backend. The DFT
// route verifies that every entry rounds cleanly (residual below 0.25) and
// silently recomputes with the naive route otherwise.
ConvolutionTable convolution_counts(const GSet& a, const GSet& b,
                                    ConvBackend backend = ConvBackend::Auto);

// {c : counts[c] > 0}; equals the sumset A + B.
GSet support(const ConvolutionTable& t);

// Elements whose normalized representation count counts[c] / |G| exceeds
// tau (strictly by default; closed = true uses >=).
GSet popular_sumset(const ConvolutionTable& t, const Rat& tau, bool closed = false);
GSet popular_sumset(const GSet& a, const GSet& b, const Rat& tau, bool closed = false,
                    ConvBackend backend = ConvBackend::Auto);

} // namespace sumset

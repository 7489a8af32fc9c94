// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <frontscan/chain_model.hpp>
#include <frontscan/config.hpp>

namespace frontscan {

// Constant product pool between ether (x) and one token (y).
struct CpmmPool {
    Wei reserve_x{0};
    TokenAmount reserve_y{0};

    [[nodiscard]] Wei k() const { return reserve_x * reserve_y; }
    friend bool operator==(const CpmmPool&, const CpmmPool&) = default;
};

struct SwapResult {
    TokenAmount out{0};
    CpmmPool pool;
};

// dy = y - ceil(k / (x + dx_net)), where dx_net is dx less the fee. The pool keeps the full dx.
[[nodiscard]] SwapResult cpmm_swap_x_for_y(const CpmmPool& pool, const Wei& dx, const Fraction& fee = Fraction{0, 1});
[[nodiscard]] SwapResult cpmm_swap_y_for_x(const CpmmPool& pool, const TokenAmount& dy,
                                           const Fraction& fee = Fraction{0, 1});

}  // namespace frontscan

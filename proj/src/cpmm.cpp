// Copyright 2026 The Frontscan Authors
// SPDX-License-Identifier: Apache-2.0

#include <frontscan/cpmm.hpp>

namespace frontscan {

namespace {

    using boost::multiprecision::cpp_int;

    cpp_int ceil_div(const cpp_int& a, const cpp_int& b) { return (a + b - 1) / b; }

    // Output side of a swap paying `in` into reserve `rin` and taking from reserve `rout`.
    cpp_int swap_out(const cpp_int& rin, const cpp_int& rout, const cpp_int& in, const Fraction& fee) {
        if (in <= 0) throw_usage_error("swap amount must be positive");
        if (rin <= 0 || rout <= 0) throw_usage_error("pool reserves must be positive");
        if (fee.den == 0 || fee.num >= fee.den) throw_usage_error("swap fee must be in [0, 1)");
        const cpp_int net = in * (fee.den - fee.num) / fee.den;
        return rout - ceil_div(rin * rout, rin + net);
    }

}  // namespace

SwapResult cpmm_swap_x_for_y(const CpmmPool& pool, const Wei& dx, const Fraction& fee) {
    const auto dy = swap_out(pool.reserve_x, pool.reserve_y, dx, fee);
    return {dy, {pool.reserve_x + dx, pool.reserve_y - dy}};
}

SwapResult cpmm_swap_y_for_x(const CpmmPool& pool, const TokenAmount& dy, const Fraction& fee) {
    const auto dx = swap_out(pool.reserve_y, pool.reserve_x, dy, fee);
    return {dx, {pool.reserve_x - dx, pool.reserve_y + dy}};
}

}  // namespace frontscan

#pragma once

#include <string>

#include "dskg/state.hpp"

namespace dskg {

/// Binary field-snapshot format:
///   magic "DSKG", format version u32, n u32, N u32, L f64, t f64,
///   N^n little-endian f64 samples of u, then N^n of du/dt.
void write_snapshot(const std::string& path, const StateSnapshot& snap);

StateSnapshot read_snapshot(const std::string& path);

}  // namespace dskg

#ifndef BKBK_SNAPSHOT_HPP
#define BKBK_SNAPSHOT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bkbk/spectral.hpp"

namespace bkbk {

// Purpose-built binary field container. Layout, all little-endian:
//   magic "BKBK" | u32 version ndim nx ny nfields | f64 time kappa g nu alpha lx ly
// followed by nfields blocks of a 16-byte space-padded name and nx*ny f64
// row-major samples. Round trips are byte-exact.
struct Snapshot {
  std::uint32_t version = 1;
  std::uint32_t ndim = 1;
  std::uint32_t nx = 0, ny = 1;
  double time = 0.0;
  double kappa = 0.0, g = 1.0, nu = 0.0, alpha = 0.0;
  double lx = 0.0, ly = 0.0;
  std::vector<std::pair<std::string, RealVec>> fields;
};

void write_snapshot(const std::string& path, const Snapshot& s);
Snapshot read_snapshot(const std::string& path);

// One-per-line header summary plus the field names (the `info` subcommand).
std::string snapshot_info(const Snapshot& s);

}  // namespace bkbk

#endif

#include "bkbk/snapshot.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include "bkbk/errors.hpp"

namespace bkbk {

namespace {

constexpr char kMagic[4] = {'B', 'K', 'B', 'K'};
constexpr std::size_t kNameLen = 16;

// The format is defined little-endian; this implementation targets
// little-endian hosts and writes native f64/u32.
void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is, const char* what) {
  std::uint32_t v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw SnapshotError(std::string("snapshot: short read in header (") + what + ")");
  return v;
}
double get_f64(std::istream& is, const char* what) {
  double v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
    throw SnapshotError(std::string("snapshot: short read in header (") + what + ")");
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Snapshot& s) {
  const std::size_t nsamples = std::size_t(s.nx) * s.ny;
  for (const auto& [name, data] : s.fields) {
    if (data.size() != nsamples)
      throw SnapshotError("snapshot: field '" + name + "' size mismatch with grid");
    if (name.size() > kNameLen)
      throw SnapshotError("snapshot: field name '" + name + "' longer than 16 bytes");
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw SnapshotError("snapshot: cannot open '" + path + "' for writing");
  os.write(kMagic, 4);
  put_u32(os, s.version);
  put_u32(os, s.ndim);
  put_u32(os, s.nx);
  put_u32(os, s.ny);
  put_u32(os, std::uint32_t(s.fields.size()));
  put_f64(os, s.time);
  put_f64(os, s.kappa);
  put_f64(os, s.g);
  put_f64(os, s.nu);
  put_f64(os, s.alpha);
  put_f64(os, s.lx);
  put_f64(os, s.ly);
  for (const auto& [name, data] : s.fields) {
    char buf[kNameLen];
    std::memset(buf, ' ', kNameLen);
    std::memcpy(buf, name.data(), name.size());
    os.write(buf, kNameLen);
    os.write(reinterpret_cast<const char*>(data.data()),
             std::streamsize(data.size() * sizeof(double)));
  }
  if (!os) throw SnapshotError("snapshot: write failed for '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw SnapshotError("snapshot: cannot open '" + path + "'");

  char magic[4];
  if (!is.read(magic, 4)) throw SnapshotError("snapshot: short read in header (magic)");
  if (std::memcmp(magic, kMagic, 4) != 0) throw SnapshotError("snapshot: bad magic");

  Snapshot s;
  s.version = get_u32(is, "version");
  if (s.version != 1)
    throw SnapshotError("snapshot: unsupported version " + std::to_string(s.version));
  s.ndim = get_u32(is, "ndim");
  s.nx = get_u32(is, "nx");
  s.ny = get_u32(is, "ny");
  const std::uint32_t nfields = get_u32(is, "field count");
  if (s.ndim != 1 && s.ndim != 2) throw SnapshotError("snapshot: ndim must be 1 or 2");
  s.time = get_f64(is, "time");
  s.kappa = get_f64(is, "kappa");
  s.g = get_f64(is, "g");
  s.nu = get_f64(is, "nu");
  s.alpha = get_f64(is, "alpha");
  s.lx = get_f64(is, "lx");
  s.ly = get_f64(is, "ly");

  const std::size_t nsamples = std::size_t(s.nx) * s.ny;
  if (nsamples == 0) throw SnapshotError("snapshot: size mismatch (empty grid)");
  for (std::uint32_t i = 0; i < nfields; ++i) {
    char buf[kNameLen];
    if (!is.read(buf, kNameLen))
      throw SnapshotError("snapshot: short read at field " + std::to_string(i) + " (name)");
    std::string name(buf, kNameLen);
    while (!name.empty() && name.back() == ' ') name.pop_back();
    RealVec data(nsamples);
    if (!is.read(reinterpret_cast<char*>(data.data()),
                 std::streamsize(nsamples * sizeof(double))))
      throw SnapshotError("snapshot: short read at field " + std::to_string(i) + " ('" +
                          name + "')");
    s.fields.emplace_back(std::move(name), std::move(data));
  }
  // Trailing bytes mean the header undercounted the blocks.
  if (is.peek() != std::ifstream::traits_type::eof())
    throw SnapshotError("snapshot: size mismatch (trailing bytes after last field)");
  return s;
}

std::string snapshot_info(const Snapshot& s) {
  std::ostringstream os;
  os << "version " << s.version << "\n"
     << "ndim " << s.ndim << "\n"
     << "grid " << s.nx << " x " << s.ny << "\n"
     << "time " << s.time << "\n"
     << "kappa " << s.kappa << "  g " << s.g << "  nu " << s.nu << "  alpha " << s.alpha
     << "\n"
     << "domain " << s.lx << " x " << s.ly << "\n"
     << "fields (" << s.fields.size() << "):";
  for (const auto& [name, data] : s.fields) os << " " << name;
  os << "\n";
  return os.str();
}

}  // namespace bkbk

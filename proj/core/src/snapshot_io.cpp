#include "dskg/snapshot_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace dskg {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; add byte swapping for this platform");

namespace {

constexpr char kMagic[4] = {'D', 'S', 'K', 'G'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw std::runtime_error("snapshot file truncated");
    return v;
}

}  // namespace

void write_snapshot(const std::string& path, const StateSnapshot& snap) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open snapshot for writing: " + path);
    const Grid& g = snap.u.grid;
    out.write(kMagic, 4);
    put<std::uint32_t>(out, kVersion);
    put<std::uint32_t>(out, std::uint32_t(g.n));
    put<std::uint32_t>(out, std::uint32_t(g.N));
    put<double>(out, g.L);
    put<double>(out, snap.t);
    out.write(reinterpret_cast<const char*>(snap.u.samples.data()),
              std::streamsize(snap.u.samples.size() * sizeof(double)));
    out.write(reinterpret_cast<const char*>(snap.ut.samples.data()),
              std::streamsize(snap.ut.samples.size() * sizeof(double)));
    if (!out) throw std::runtime_error("snapshot write failed: " + path);
}

StateSnapshot read_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("not a field snapshot: " + path);
    const auto version = get<std::uint32_t>(in);
    if (version != kVersion)
        throw std::runtime_error("unsupported snapshot version in " + path);
    Grid g;
    g.n = int(get<std::uint32_t>(in));
    g.N = int(get<std::uint32_t>(in));
    g.L = get<double>(in);
    g.validate();
    StateSnapshot snap;
    snap.t = get<double>(in);
    snap.u.grid = g;
    snap.ut.grid = g;
    snap.u.samples.resize(g.size());
    snap.ut.samples.resize(g.size());
    in.read(reinterpret_cast<char*>(snap.u.samples.data()),
            std::streamsize(g.size() * sizeof(double)));
    in.read(reinterpret_cast<char*>(snap.ut.samples.data()),
            std::streamsize(g.size() * sizeof(double)));
    if (!in) throw std::runtime_error("snapshot file truncated: " + path);
    return snap;
}

}  // namespace dskg

#include "soldyn/io/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include "soldyn/errors.hpp"

namespace soldyn::io {

namespace {

constexpr char kMagic[8] = {'S', 'O', 'L', 'D', 'Y', 'N', 'C', 'K'};

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

template <typename T>
void put(std::string& buf, T v) {
    char tmp[sizeof(T)];
    std::memcpy(tmp, &v, sizeof(T));
    buf.append(tmp, sizeof(T));
}

template <typename T>
bool take(const std::string& buf, std::size_t& off, T& v) {
    if (off + sizeof(T) > buf.size()) return false;
    std::memcpy(&v, buf.data() + off, sizeof(T));
    off += sizeof(T);
    return true;
}

}  // namespace

std::uint64_t fnv1a64(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

void save_checkpoint(const std::string& path, const ComplexField& field,
                     const std::string& run_id) {
    std::string buf;
    buf.append(kMagic, sizeof kMagic);
    put<std::uint32_t>(buf, kCheckpointVersion);
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(run_id.size()));
    buf.append(run_id);
    put<double>(buf, field.time);
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(field.grid.dim()));
    for (int a = 0; a < field.grid.dim(); ++a) {
        put<std::uint32_t>(buf, static_cast<std::uint32_t>(field.grid.points(a)));
        put<double>(buf, field.grid.extent(a));
    }
    put<std::uint64_t>(buf, static_cast<std::uint64_t>(field.values.size()));

    std::size_t payload_start = buf.size();
    for (const auto& z : field.values) {
        put<double>(buf, z.real());
        put<double>(buf, z.imag());
    }
    std::uint64_t checksum = fnv1a64(buf.data() + payload_start, buf.size() - payload_start);
    put<std::uint64_t>(buf, checksum);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(Error::Kind::io, "cannot open checkpoint '" + path + "' for writing");
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) fail(Error::Kind::io, "short write to checkpoint '" + path + "'");
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Error::Kind::io, "cannot open checkpoint '" + path + "'");
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::size_t off = 0;
    if (buf.size() < sizeof kMagic || std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0)
        fail(Error::Kind::corrupt, "'" + path + "' is not a soldyn checkpoint");
    off = sizeof kMagic;

    std::uint32_t version = 0;
    if (!take(buf, off, version)) fail(Error::Kind::corrupt, "truncated checkpoint header");
    if (version != kCheckpointVersion)
        fail(Error::Kind::unsupported,
             "checkpoint version " + std::to_string(version) + " not supported (expected " +
                 std::to_string(kCheckpointVersion) + ")");

    std::uint32_t id_len = 0;
    if (!take(buf, off, id_len) || off + id_len > buf.size())
        fail(Error::Kind::corrupt, "truncated checkpoint header");
    Checkpoint ck;
    ck.version = version;
    ck.run_id = buf.substr(off, id_len);
    off += id_len;

    double time = 0.0;
    std::uint32_t dim = 0;
    if (!take(buf, off, time) || !take(buf, off, dim) || dim < 1 || dim > 3)
        fail(Error::Kind::corrupt, "truncated or invalid checkpoint grid descriptor");
    std::array<int, kMaxDim> points{1, 1, 1};
    std::array<double, kMaxDim> extents{1.0, 1.0, 1.0};
    for (std::uint32_t a = 0; a < dim; ++a) {
        std::uint32_t n = 0;
        double L = 0.0;
        if (!take(buf, off, n) || !take(buf, off, L))
            fail(Error::Kind::corrupt, "truncated checkpoint grid descriptor");
        points[a] = static_cast<int>(n);
        extents[a] = L;
    }
    SpatialGrid grid = SpatialGrid::make(static_cast<int>(dim), points, extents);

    std::uint64_t count = 0;
    if (!take(buf, off, count) || count != grid.size())
        fail(Error::Kind::corrupt, "checkpoint sample count disagrees with its grid");

    std::size_t payload_bytes = static_cast<std::size_t>(count) * 2 * sizeof(double);
    if (off + payload_bytes + sizeof(std::uint64_t) > buf.size())
        fail(Error::Kind::corrupt, "checkpoint payload truncated");

    std::uint64_t expected = fnv1a64(buf.data() + off, payload_bytes);
    ck.field.grid = grid;
    ck.field.time = time;
    ck.field.values.resize(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        double re = 0.0, im = 0.0;
        take(buf, off, re);
        take(buf, off, im);
        ck.field.values[i] = {re, im};
    }
    std::uint64_t stored = 0;
    if (!take(buf, off, stored)) fail(Error::Kind::corrupt, "checkpoint checksum missing");
    if (stored != expected)
        fail(Error::Kind::corrupt, "checkpoint checksum mismatch in '" + path + "'");
    return ck;
}

}  // namespace soldyn::io

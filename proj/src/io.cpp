#include "patc/io.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace patc {

namespace {

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > buf.size()) throw std::runtime_error("truncated file");
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint8_t>(buf[pos]) |
                          (static_cast<std::uint16_t>(static_cast<std::uint8_t>(buf[pos + 1])) << 8);
        pos += 2;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[pos + i])) << (8 * i);
        pos += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(buf[pos++]);
    }
    void magic(const char* m) {
        need(4);
        if (buf.compare(pos, 4, m) != 0) throw std::runtime_error(std::string("bad magic, expected ") + m);
        pos += 4;
    }
};

void write_binary(const std::string& path, const std::string& bytes) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::string read_binary(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    if (!is && !is.eof()) throw std::runtime_error("read failed: " + path);
    return ss.str();
}

} // namespace

void write_detector(const std::string& path, const DetectorData& data) {
    data.grid.validate();
    if (!data.grid.sphere.hemisphere())
        throw std::invalid_argument("detector files hold hemisphere grids only");
    if (data.values.size() != data.grid.samples())
        throw std::invalid_argument("detector value count does not match grid");

    std::string out;
    out.reserve(45 + data.values.size() * 8);
    out += "PATC";
    put_u16(out, kFormatVersion);
    out.push_back(static_cast<char>(data.kind));
    put_u32(out, static_cast<std::uint32_t>(data.grid.sphere.n_polar));
    put_u32(out, static_cast<std::uint32_t>(data.grid.sphere.n_az));
    put_u32(out, static_cast<std::uint32_t>(data.grid.n_t));
    put_f64(out, data.grid.sphere.polar_min);
    put_f64(out, data.grid.t_max);
    put_f64(out, data.grid.sphere.r_det);
    for (double v : data.values) put_f64(out, v);
    write_binary(path, out);
}

DetectorData read_detector(const std::string& path) {
    std::string buf = read_binary(path);
    Reader r{buf};
    r.magic("PATC");
    std::uint16_t version = r.u16();
    if (version != kFormatVersion)
        throw std::runtime_error("unsupported detector file version " + std::to_string(version));
    std::uint8_t kind = r.u8();
    if (kind > 4) throw std::runtime_error("unknown data kind tag " + std::to_string(kind));

    DetectorData data;
    data.kind = static_cast<DataKind>(kind);
    data.grid.sphere.n_polar = static_cast<int>(r.u32());
    data.grid.sphere.n_az = static_cast<int>(r.u32());
    data.grid.n_t = static_cast<int>(r.u32());
    data.grid.sphere.polar_min = r.f64();
    data.grid.sphere.polar_max = 0.5 * kPi;
    data.grid.t_max = r.f64();
    data.grid.sphere.r_det = r.f64();
    data.grid.validate();

    std::size_t n = data.grid.samples();
    if (buf.size() != r.pos + n * 8) throw std::runtime_error("detector file size mismatch");
    data.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) data.values[i] = r.f64();
    return data;
}

void write_volume(const std::string& path, const VolumeGrid& vol) {
    if (vol.n < 1 || vol.values.size() != std::size_t(vol.n) * vol.n * vol.n)
        throw std::invalid_argument("volume value count does not match grid");
    std::string out;
    out.reserve(18 + vol.values.size() * 8);
    out += "PATV";
    put_u16(out, kFormatVersion);
    put_u32(out, static_cast<std::uint32_t>(vol.n));
    put_f64(out, vol.half_width);
    for (double v : vol.values) put_f64(out, v);
    write_binary(path, out);
}

VolumeGrid read_volume(const std::string& path) {
    std::string buf = read_binary(path);
    Reader r{buf};
    r.magic("PATV");
    std::uint16_t version = r.u16();
    if (version != kFormatVersion)
        throw std::runtime_error("unsupported volume file version " + std::to_string(version));
    int n = static_cast<int>(r.u32());
    double hw = r.f64();
    VolumeGrid vol(n, hw);
    if (buf.size() != r.pos + vol.values.size() * 8) throw std::runtime_error("volume file size mismatch");
    for (double& v : vol.values) v = r.f64();
    return vol;
}

std::string detector_csv(const DetectorData& data) {
    std::ostringstream os;
    os.precision(17);
    os << "theta_polar,theta_az,t,value\n";
    const SphereGrid& sg = data.grid.sphere;
    for (int i = 0; i < sg.n_polar; ++i)
        for (int j = 0; j < sg.n_az; ++j)
            for (int k = 0; k < data.grid.n_t; ++k)
                os << sg.polar(i) << ',' << sg.azimuth(j) << ',' << data.grid.time(k) << ','
                   << data.at(i, j, k) << '\n';
    return os.str();
}

std::string sinogram_csv(const Sinogram2D& sino) {
    std::ostringstream os;
    os.precision(17);
    os << "angle,s,value\n";
    for (int i = 0; i < sino.n_omega; ++i)
        for (int j = 0; j < sino.n_s; ++j)
            os << sino.angle(i) << ',' << sino.offset(j) << ',' << sino.at(i, j) << '\n';
    return os.str();
}

void write_pgm16(const std::string& path, int width, int height,
                 const std::vector<double>& row_major, double lo, double hi) {
    if (width < 1 || height < 1 || row_major.size() != std::size_t(width) * height)
        throw std::invalid_argument("bad image shape");
    std::ostringstream head;
    head.precision(17);
    head << "P5\n# window min " << lo << " max " << hi << "\n" << width << ' ' << height << "\n65535\n";
    std::string out = head.str();
    out.reserve(out.size() + row_major.size() * 2);
    const double span = hi > lo ? hi - lo : 1.0;
    for (double v : row_major) {
        double x = (v - lo) / span;
        if (x < 0.0) x = 0.0;
        if (x > 1.0) x = 1.0;
        std::uint16_t q = static_cast<std::uint16_t>(x * 65535.0 + 0.5);
        out.push_back(static_cast<char>((q >> 8) & 0xff));
        out.push_back(static_cast<char>(q & 0xff));
    }
    write_binary(path, out);
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::string buf = read_binary(path);
    return fnv1a64(buf.data(), buf.size());
}

void write_text_file(const std::string& path, const std::string& content) {
    write_binary(path, content);
}

std::string read_text_file(const std::string& path) { return read_binary(path); }

} // namespace patc

#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "patc/io.hpp"

using namespace patc;

namespace {

std::string tmp_path(const std::string& name) {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() / "patc_io_tests";
        std::filesystem::create_directories(d);
        return d;
    }();
    return (dir / name).string();
}

DetectorData sample_detector() {
    SphereTimeGrid g;
    g.sphere.n_polar = 5;
    g.sphere.n_az = 8;
    g.sphere.polar_min = kPi / 25.0;
    g.sphere.polar_max = 0.5 * kPi;
    g.sphere.r_det = 1.0;
    g.n_t = 7;
    g.t_max = 2.0;
    DetectorData d(g, DataKind::funk);
    for (std::size_t i = 0; i < d.values.size(); ++i)
        d.values[i] = std::sin(0.37 * double(i) + 1.0) * std::exp(-0.01 * double(i));
    d.values[0] = -0.0;
    d.values[1] = 1e-308;
    return d;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i]))
            return false;
    return true;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("detector round trip is bit exact") {
    auto d = sample_detector();
    auto path = tmp_path("roundtrip.patc");
    write_detector(path, d);
    auto r = read_detector(path);

    CHECK(r.kind == d.kind);
    CHECK(r.grid.sphere.n_polar == d.grid.sphere.n_polar);
    CHECK(r.grid.sphere.n_az == d.grid.sphere.n_az);
    CHECK(r.grid.n_t == d.grid.n_t);
    CHECK(r.grid.sphere.polar_min == d.grid.sphere.polar_min);
    CHECK(r.grid.sphere.polar_max == 0.5 * kPi);
    CHECK(r.grid.t_max == d.grid.t_max);
    CHECK(r.grid.sphere.r_det == d.grid.sphere.r_det);
    CHECK(bitwise_equal(r.values, d.values));
    CHECK(std::signbit(r.values[0]));

    // rewriting the same data reproduces the same bytes
    auto h1 = fnv1a64_file(path);
    write_detector(path, d);
    CHECK(fnv1a64_file(path) == h1);
}

TEST_CASE("detector write validates its input") {
    auto d = sample_detector();
    d.grid.sphere.polar_max = kPi - kPi / 25.0;
    d.values.assign(d.grid.samples(), 0.0);
    CHECK_THROWS_AS(write_detector(tmp_path("invalid.patc"), d), std::invalid_argument);

    auto d2 = sample_detector();
    d2.values.pop_back();
    CHECK_THROWS_AS(write_detector(tmp_path("invalid.patc"), d2), std::invalid_argument);
}

TEST_CASE("detector read rejects malformed files") {
    auto d = sample_detector();
    auto path = tmp_path("good.patc");
    write_detector(path, d);
    std::string good = read_text_file(path);

    CHECK_THROWS_AS(read_detector(tmp_path("missing.patc")), std::runtime_error);

    auto bad = tmp_path("bad.patc");
    std::string s = good;
    s[0] = 'Q';
    write_text_file(bad, s);
    CHECK_THROWS_AS(read_detector(bad), std::runtime_error);

    s = good;
    s[4] = 2; // version field
    write_text_file(bad, s);
    CHECK_THROWS_AS(read_detector(bad), std::runtime_error);

    s = good;
    s[6] = 9; // kind tag
    write_text_file(bad, s);
    CHECK_THROWS_AS(read_detector(bad), std::runtime_error);

    write_text_file(bad, good.substr(0, 10)); // inside the header
    CHECK_THROWS_AS(read_detector(bad), std::runtime_error);

    write_text_file(bad, good.substr(0, good.size() - 8)); // one sample short
    CHECK_THROWS_AS(read_detector(bad), std::runtime_error);

    write_text_file(bad, good + "x"); // trailing garbage
    CHECK_THROWS_AS(read_detector(bad), std::runtime_error);
}

TEST_CASE("volume round trip is bit exact") {
    VolumeGrid vol(7, 1.25);
    for (std::size_t i = 0; i < vol.values.size(); ++i)
        vol.values[i] = std::cos(0.11 * double(i)) * 3.0;
    auto path = tmp_path("roundtrip.patv");
    write_volume(path, vol);
    auto r = read_volume(path);
    CHECK(r.n == 7);
    CHECK(r.half_width == 1.25);
    CHECK(bitwise_equal(r.values, vol.values));
}

TEST_CASE("volume io rejects malformed input") {
    VolumeGrid vol(3, 1.0);
    vol.values.pop_back();
    CHECK_THROWS_AS(write_volume(tmp_path("invalid.patv"), vol), std::invalid_argument);

    // a detector file is not a volume file
    auto d = sample_detector();
    auto dpath = tmp_path("notavolume.patc");
    write_detector(dpath, d);
    CHECK_THROWS_AS(read_volume(dpath), std::runtime_error);

    VolumeGrid ok(3, 1.0);
    auto path = tmp_path("good.patv");
    write_volume(path, ok);
    std::string good = read_text_file(path);

    auto bad = tmp_path("bad.patv");
    std::string s = good;
    s[4] = 7; // version field
    write_text_file(bad, s);
    CHECK_THROWS_AS(read_volume(bad), std::runtime_error);

    write_text_file(bad, good.substr(0, good.size() - 3));
    CHECK_THROWS_AS(read_volume(bad), std::runtime_error);
}

TEST_CASE("pgm16 quantization and layout") {
    auto path = tmp_path("image.pgm");
    std::vector<double> img = {0.0, 0.5, 1.0, -2.0, 3.0, 0.25};
    write_pgm16(path, 3, 2, img, 0.0, 1.0);
    std::string bytes = read_text_file(path);

    CHECK(bytes.rfind("P5\n", 0) == 0);
    CHECK(bytes.find("3 2\n65535\n") != std::string::npos);
    std::size_t data_at = bytes.find("65535\n") + 6;
    REQUIRE(bytes.size() - data_at == 12);

    auto px = [&](int i) {
        return (std::uint16_t(std::uint8_t(bytes[data_at + 2 * i])) << 8) |
               std::uint8_t(bytes[data_at + 2 * i + 1]);
    };
    CHECK(px(0) == 0);
    CHECK(px(1) == 32768);
    CHECK(px(2) == 65535);
    CHECK(px(3) == 0);     // clipped below
    CHECK(px(4) == 65535); // clipped above
    CHECK(px(5) == 16384);

    CHECK_THROWS_AS(write_pgm16(path, 2, 2, img, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("csv exports") {
    SphereTimeGrid g;
    g.sphere.n_polar = 2;
    g.sphere.n_az = 3;
    g.sphere.polar_min = kPi / 25.0;
    g.sphere.polar_max = 0.5 * kPi;
    g.n_t = 2;
    g.t_max = 2.0;
    DetectorData d(g, DataKind::detector);
    for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] = double(i) / 7.0;

    auto csv = detector_csv(d);
    CHECK(csv.rfind("theta_polar,theta_az,t,value\n", 0) == 0);
    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + d.values.size());

    // 17 significant digits must round trip the stored double
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    std::getline(is, line);
    double v = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(v == d.values[0]);

    Sinogram2D sino(4, 5, 1.5);
    for (std::size_t i = 0; i < sino.values.size(); ++i) sino.values[i] = double(i);
    auto scsv = sinogram_csv(sino);
    CHECK(scsv.rfind("angle,s,value\n", 0) == 0);
    lines = 0;
    for (char c : scsv)
        if (c == '\n') ++lines;
    CHECK(lines == 1 + sino.values.size());
}

TEST_CASE("fnv1a64 known vectors") {
    CHECK(fnv1a64("", 0) == 14695981039346656037ull);
    CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar", 6) == 0x85944171f73967e8ull);

    auto path = tmp_path("hashme.bin");
    std::string content("foobar");
    write_text_file(path, content);
    CHECK(fnv1a64_file(path) == fnv1a64(content.data(), content.size()));
}

TEST_CASE("text files hold arbitrary bytes") {
    auto path = tmp_path("blob.txt");
    std::string content = "line\n";
    content.push_back('\0');
    content += "\r\nafter";
    write_text_file(path, content);
    CHECK(read_text_file(path) == content);
}

}

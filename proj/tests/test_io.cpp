#include "navgraph/io.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"

using namespace navgraph;

namespace {

std::string temp_path(const std::string& name) {
    static int counter = 0;
    auto dir = std::filesystem::temp_directory_path() / "navgraph_io_tests";
    std::filesystem::create_directories(dir);
    return (dir / (name + "_" + std::to_string(counter++))).string();
}

void write_bytes(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), std::streamsize(bytes.size()));
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("fvecs single record, exact bytes") {
    const std::string path = temp_path("one");
    write_bytes(path, std::string("\x02\x00\x00\x00"
                                  "\x00\x00\x80\x3F"
                                  "\x00\x00\x00\x40",
                                  12));
    Dataset d = load_fvecs(path);
    CHECK(d.n == 1);
    CHECK(d.dim == 2);
    CHECK(d.values == std::vector<float>{1.0f, 2.0f});
}

TEST_CASE("fvecs empty file yields n=0") {
    const std::string path = temp_path("empty");
    write_bytes(path, "");
    Dataset d = load_fvecs(path);
    CHECK(d.n == 0);
    CHECK(d.dim == 0);
}

TEST_CASE("fvecs round-trip is bit-exact") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<float> val(-100.0f, 100.0f);
    std::vector<float> values(37 * 9);
    for (float& v : values) v = val(rng);
    Dataset d = make_dataset(9, values);

    const std::string path = temp_path("roundtrip");
    save_fvecs(path, d);
    Dataset back = load_fvecs(path);
    CHECK(back.n == d.n);
    CHECK(back.dim == d.dim);
    CHECK(std::memcmp(back.values.data(), d.values.data(), values.size() * 4) == 0);
}

TEST_CASE("fvecs malformed inputs name the byte offset") {
    const std::string good_record("\x02\x00\x00\x00"
                                  "\x00\x00\x80\x3F"
                                  "\x00\x00\x00\x40",
                                  12);

    SUBCASE("truncated record") {
        const std::string path = temp_path("trunc");
        write_bytes(path, good_record + std::string("\x03\x00\x00\x00\x01", 5));
        CHECK_THROWS_WITH_AS(load_fvecs(path), doctest::Contains("byte 12"), std::runtime_error);
    }
    SUBCASE("truncated header") {
        const std::string path = temp_path("trunc_header");
        write_bytes(path, good_record + std::string("\x03", 1));
        CHECK_THROWS_WITH_AS(load_fvecs(path), doctest::Contains("byte 12"), std::runtime_error);
    }
    SUBCASE("inconsistent dimension") {
        const std::string path = temp_path("baddim");
        write_bytes(path, good_record + std::string("\x03\x00\x00\x00", 4) + std::string(12, '\0'));
        CHECK_THROWS_WITH_AS(load_fvecs(path), doctest::Contains("inconsistent dimension 3"),
                             std::runtime_error);
    }
    SUBCASE("non-positive dimension") {
        const std::string path = temp_path("zerodim");
        write_bytes(path, std::string("\x00\x00\x00\x00", 4));
        CHECK_THROWS_WITH_AS(load_fvecs(path), doctest::Contains("non-positive dimension"),
                             std::runtime_error);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_fvecs(temp_path("missing") + ".nope"), std::runtime_error);
    }
}

TEST_CASE("ivecs round-trip and layout") {
    const std::vector<std::vector<std::int32_t>> rows{{4, 1, 7}, {0, 2, 5}};
    const std::string path = temp_path("ivecs");
    save_ivecs(path, rows);
    CHECK(load_ivecs(path) == rows);

    const std::string bytes = read_bytes(path);
    REQUIRE(bytes.size() == 2 * (4 + 3 * 4));
    std::int32_t dim;
    std::memcpy(&dim, bytes.data(), 4);
    CHECK(dim == 3);
    std::int32_t first;
    std::memcpy(&first, bytes.data() + 4, 4);
    CHECK(first == 4);
}

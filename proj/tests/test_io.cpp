#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "entperc/io.hpp"
#include "entperc/rng.hpp"

using namespace entperc;

namespace {

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("sha256 known vectors") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    // Multi-block input.
    CHECK(sha256_hex(std::string(200, 'a')) ==
          sha256_hex(std::string(100, 'a') + std::string(100, 'a')));
    CHECK(sha256_hex(std::string(1000000, 'a')) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("csv escaping and formatting") {
    CsvWriter csv({"name", "value"});
    csv.add_row({"plain", CsvWriter::field(std::int64_t(42))});
    csv.add_row({"comma,inside", CsvWriter::field(0.5)});
    csv.add_row({"quote\"inside", "x"});
    const std::string text = csv.str();
    CHECK(text ==
          "name,value\nplain,42\n\"comma,inside\",0.5\n\"quote\"\"inside\",x\n");
}

TEST_CASE("density matrix files round-trip bit-exactly") {
    auto rng = make_stream_rng(71, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(8, 8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
    Matrix m = g * g.adjoint();
    m /= m.trace();
    const DensityMatrix rho = DensityMatrix::from_matrix(3, std::move(m));

    const std::string path = temp_path("entperc_test_rho.bin");
    write_density_matrix(path, rho);
    const DensityMatrix back = read_density_matrix(path);
    CHECK(back.qubits() == 3);
    CHECK(back.matrix() == rho.matrix());
    std::remove(path.c_str());
}

TEST_CASE("corrupt density matrix files are rejected") {
    const std::string path = temp_path("entperc_test_bad.bin");
    write_file(path, "not a density matrix");
    CHECK_THROWS_AS(read_density_matrix(path), std::runtime_error);
    std::remove(path.c_str());
}

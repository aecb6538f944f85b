#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entperc/quantum.hpp"

namespace entperc {

// RFC-4180 style CSV: header row, CRLF-free lines, fields quoted only when
// needed. Number formatting is fixed so identical data gives identical bytes.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);

    void add_row(const std::vector<std::string>& fields);
    std::string str() const;
    void write(const std::string& path) const;

    static std::string field(std::int64_t v);
    static std::string field(double v);

  private:
    static std::string escape(const std::string& raw);
    std::string body_;
};

std::string format_double(double v);

// SHA-256 of a byte string / file, as lowercase hex.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

void write_file(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

// Binary density matrix: magic "ENTPRHO1", u64 qubit count, u64 dimension,
// then dim*dim row-major (re, im) little-endian doubles.
void write_density_matrix(const std::string& path, const DensityMatrix& rho);
DensityMatrix read_density_matrix(const std::string& path);

std::string density_matrix_csv(const DensityMatrix& rho);

}  // namespace entperc

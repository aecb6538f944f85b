#include "entperc/io.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace entperc {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) { add_row(header); }

std::string CsvWriter::escape(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void CsvWriter::add_row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) body_ += ',';
        body_ += escape(fields[i]);
    }
    body_ += '\n';
}

std::string CsvWriter::str() const { return body_; }

void CsvWriter::write(const std::string& path) const { write_file(path, body_); }

std::string CsvWriter::field(std::int64_t v) { return std::to_string(v); }

std::string CsvWriter::field(double v) { return format_double(v); }

namespace {

// Compact SHA-256 (FIPS 180-4).
struct Sha256 {
    std::array<std::uint32_t, 8> h{0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                   0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    std::array<std::uint8_t, 64> block{};
    std::size_t block_len = 0;
    std::uint64_t total_bits = 0;

    static constexpr std::array<std::uint32_t, 64> k = {
        0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
        0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
        0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
        0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
        0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
        0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
        0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
        0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
        0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
        0xc67178f2};

    static std::uint32_t rotr(std::uint32_t x, int s) { return (x >> s) | (x << (32 - s)); }

    void process() {
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = (std::uint32_t(block[4 * i]) << 24) | (std::uint32_t(block[4 * i + 1]) << 16) |
                   (std::uint32_t(block[4 * i + 2]) << 8) | std::uint32_t(block[4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            const std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            const std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        auto [a, b, c, d, e, f, g, hh] = h;
        for (int i = 0; i < 64; ++i) {
            const std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            const std::uint32_t ch = (e & f) ^ (~e & g);
            const std::uint32_t t1 = hh + s1 + ch + k[i] + w[i];
            const std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            const std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            const std::uint32_t t2 = s0 + maj;
            hh = g;
            g = f;
            f = e;
            e = d + t1;
            d = c;
            c = b;
            b = a;
            a = t1 + t2;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
        h[5] += f;
        h[6] += g;
        h[7] += hh;
    }

    void update(const char* data, std::size_t len) {
        total_bits += std::uint64_t(len) * 8;
        while (len > 0) {
            const std::size_t take = std::min(len, block.size() - block_len);
            std::memcpy(block.data() + block_len, data, take);
            block_len += take;
            data += take;
            len -= take;
            if (block_len == block.size()) {
                process();
                block_len = 0;
            }
        }
    }

    std::string finish() {
        const std::uint64_t bits = total_bits;
        const char pad = static_cast<char>(0x80);
        update(&pad, 1);
        const char zero = 0;
        while (block_len != 56) update(&zero, 1);
        for (int i = 7; i >= 0; --i) {
            const char byte = static_cast<char>((bits >> (8 * i)) & 0xff);
            update(&byte, 1);
        }
        std::string hex;
        hex.reserve(64);
        for (std::uint32_t word : h) {
            char buf[9];
            std::snprintf(buf, sizeof buf, "%08x", word);
            hex += buf;
        }
        return hex;
    }
};

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    Sha256 hasher;
    hasher.update(bytes.data(), bytes.size());
    return hasher.finish();
}

std::string sha256_file(const std::string& path) { return sha256_hex(read_file(path)); }

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for read: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

constexpr char kRhoMagic[8] = {'E', 'N', 'T', 'P', 'R', 'H', 'O', '1'};

void append_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out += static_cast<char>((v >> (8 * i)) & 0xff);
}

void append_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    append_u64(out, bits);
}

std::uint64_t take_u64(const std::string& in, std::size_t& pos) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(in[pos++])) << (8 * i);
    return v;
}

double take_f64(const std::string& in, std::size_t& pos) {
    const std::uint64_t bits = take_u64(in, pos);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void write_density_matrix(const std::string& path, const DensityMatrix& rho) {
    std::string out;
    const std::int64_t dim = rho.dim();
    out.reserve(24 + static_cast<std::size_t>(dim) * dim * 16);
    out.append(kRhoMagic, sizeof kRhoMagic);
    append_u64(out, static_cast<std::uint64_t>(rho.qubits()));
    append_u64(out, static_cast<std::uint64_t>(dim));
    for (std::int64_t r = 0; r < dim; ++r) {
        for (std::int64_t c = 0; c < dim; ++c) {
            append_f64(out, rho.matrix()(r, c).real());
            append_f64(out, rho.matrix()(r, c).imag());
        }
    }
    write_file(path, out);
}

DensityMatrix read_density_matrix(const std::string& path) {
    const std::string in = read_file(path);
    if (in.size() < 24 || std::memcmp(in.data(), kRhoMagic, sizeof kRhoMagic) != 0)
        throw std::runtime_error("not a density matrix file: " + path);
    std::size_t pos = sizeof kRhoMagic;
    const auto qubits = static_cast<int>(take_u64(in, pos));
    const auto dim = static_cast<std::int64_t>(take_u64(in, pos));
    if (dim != (std::int64_t(1) << qubits) ||
        in.size() != 24 + static_cast<std::size_t>(dim) * dim * 16)
        throw std::runtime_error("corrupt density matrix file: " + path);
    Matrix m(dim, dim);
    for (std::int64_t r = 0; r < dim; ++r) {
        for (std::int64_t c = 0; c < dim; ++c) {
            const double re = take_f64(in, pos);
            const double im = take_f64(in, pos);
            m(r, c) = Complex(re, im);
        }
    }
    return DensityMatrix::from_matrix(qubits, std::move(m), 1e-6);
}

std::string density_matrix_csv(const DensityMatrix& rho) {
    CsvWriter csv({"row", "col", "re", "im"});
    const std::int64_t dim = rho.dim();
    for (std::int64_t r = 0; r < dim; ++r)
        for (std::int64_t c = 0; c < dim; ++c)
            csv.add_row({CsvWriter::field(r), CsvWriter::field(c),
                         CsvWriter::field(rho.matrix()(r, c).real()),
                         CsvWriter::field(rho.matrix()(r, c).imag())});
    return csv.str();
}

}  // namespace entperc

#include "zk/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "zk/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot format assumes a little-endian host");

namespace zk::zk1 {

namespace {

const char MAGIC[4] = {'Z', 'K', '1', '\0'};

void put_u64(std::ostream& out, uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

uint64_t get_u64(std::istream& in) {
    uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw IoError("snapshot: truncated header");
    return v;
}

double get_f64(std::istream& in) {
    double v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in) throw IoError("snapshot: truncated payload");
    return v;
}

} // namespace

void write_record(std::ostream& out, const Grid& g, double t,
                  const std::vector<const SpectralField*>& fields) {
    for (const auto* f : fields)
        require_same_grid(g, f->grid(), "zk1::write_record");
    out.write(MAGIC, 4);
    put_u64(out, static_cast<uint64_t>(g.M));
    put_f64(out, g.L);
    put_f64(out, t);
    for (const auto* f : fields) {
        for (int j = g.j_min(); j <= g.j_max(); ++j) {
            cplx c = f->coeff(j);
            put_f64(out, c.real());
            put_f64(out, c.imag());
        }
    }
    if (!out) throw IoError("snapshot: write failed");
}

Record read_record(std::istream& in, int n_fields) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, MAGIC, 4) != 0)
        throw IoError("snapshot: bad magic");
    uint64_t M = get_u64(in);
    double L = get_f64(in);
    double t = get_f64(in);
    if (M < 4 || M % 2 != 0 || M > (1ull << 30))
        throw IoError("snapshot: implausible mode count");
    Record rec;
    rec.grid = Grid(L, static_cast<int>(M));
    rec.t = t;
    for (int f = 0; f < n_fields; ++f) {
        SpectralField field(rec.grid);
        for (int j = rec.grid.j_min(); j <= rec.grid.j_max(); ++j) {
            double re = get_f64(in);
            double im = get_f64(in);
            field.set_coeff(j, cplx(re, im));
        }
        rec.fields.push_back(std::move(field));
    }
    return rec;
}

void write_file(const std::string& path, const Grid& g, double t,
                const std::vector<const SpectralField*>& fields) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    write_record(out, g, t, fields);
}

Record read_file(const std::string& path, int n_fields) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    return read_record(in, n_fields);
}

} // namespace zk::zk1

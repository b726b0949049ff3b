#ifndef ZK_SNAPSHOT_HPP
#define ZK_SNAPSHOT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "zk/field.hpp"

namespace zk {

// Binary snapshot format, one record per call:
//   magic "ZK1\0" | u64 M | f64 L | f64 t | field blocks
// each field block being M (re, im) f64 pairs in mode order j = -M/2 .. M/2-1.
// All integers and floats are little-endian.
namespace zk1 {

void write_record(std::ostream& out, const Grid& g, double t,
                  const std::vector<const SpectralField*>& fields);

struct Record {
    Grid grid;
    double t = 0.0;
    std::vector<SpectralField> fields;
};

// Reads one record with n_fields blocks.  Throws IoError on bad magic or short reads.
Record read_record(std::istream& in, int n_fields);

void write_file(const std::string& path, const Grid& g, double t,
                const std::vector<const SpectralField*>& fields);
Record read_file(const std::string& path, int n_fields);

} // namespace zk1

} // namespace zk

#endif

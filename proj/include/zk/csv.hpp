#ifndef ZK_CSV_HPP
#define ZK_CSV_HPP

#include <string>
#include <vector>

namespace zk {

// Doubles are printed with %.17g so that equal values always produce identical
// bytes and round-trip exactly; this is what makes run outputs reproducible.
std::string format_double(double v);

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(const std::vector<double>& values);
    void add_row_mixed(const std::vector<std::string>& cells);

    std::string to_string() const;
    void write_file(const std::string& path) const;

    size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column_index(const std::string& name) const; // -1 if absent
};

CsvTable read_csv(const std::string& path);

} // namespace zk

#endif

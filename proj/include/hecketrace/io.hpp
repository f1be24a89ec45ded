#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ht {

// 15 significant digits.
std::string fmt(double x);
// p/q in lowest terms; integers print without the denominator.
std::string fmt(const mpq_class& q);
std::string fmt(const mpz_class& z);

// Rows are buffered and written in one go by save().
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);
    void add(std::vector<std::string> row);
    size_t size() const { return rows_.size(); }
    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }
    std::string str() const;
    void save(const std::string& path) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void write_file(const std::string& path, const std::string& content);

}  // namespace ht

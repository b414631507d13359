#pragma once

#include <string>
#include <utility>
#include <vector>

namespace palms {

std::string fmt17(double v);  // 17 significant digits, shortest form

struct CsvMatrix {
    std::vector<double> data;  // row-major
    int rows = 0;
    int cols = 0;
};

void write_csv_matrix(const std::string& path, const double* data, int rows, int cols);
CsvMatrix read_csv_matrix(const std::string& path);

// plain key=value lines, '#' comments; order-preserving
using KvPairs = std::vector<std::pair<std::string, std::string>>;
void kv_write(const std::string& path, const KvPairs& kv);
KvPairs kv_read(const std::string& path);
const std::string* kv_find(const KvPairs& kv, const std::string& key);

}  // namespace palms

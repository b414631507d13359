#include "palms/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "palms/errors.hpp"

namespace palms {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv_matrix(const std::string& path, const double* data, int rows, int cols) {
    std::ofstream out(path);
    if (!out) throw data_error("write_csv_matrix: cannot write " + path);
    std::string line;
    for (int i = 0; i < rows; ++i) {
        line.clear();
        for (int j = 0; j < cols; ++j) {
            if (j) line += ',';
            line += fmt17(data[static_cast<std::size_t>(i) * cols + j]);
        }
        line += '\n';
        out << line;
    }
    if (!out) throw data_error("write_csv_matrix: write failure on " + path);
}

CsvMatrix read_csv_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("read_csv_matrix: cannot open " + path);
    CsvMatrix m;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() && in.peek() == EOF) break;
        int cols = 0;
        const char* p = line.c_str();
        while (true) {
            char* end = nullptr;
            double v = std::strtod(p, &end);
            if (end == p) throw parse_error("read_csv_matrix: bad number in " + path, line_no);
            m.data.push_back(v);
            ++cols;
            while (*end == ' ' || *end == '\t') ++end;
            if (*end == ',') {
                p = end + 1;
            } else if (*end == '\0' || *end == '\r') {
                break;
            } else {
                throw parse_error("read_csv_matrix: unexpected character in " + path, line_no);
            }
        }
        if (m.rows == 0) {
            m.cols = cols;
        } else if (cols != m.cols) {
            throw parse_error("read_csv_matrix: ragged row in " + path, line_no);
        }
        ++m.rows;
    }
    if (m.rows == 0) throw data_error("read_csv_matrix: empty file " + path);
    return m;
}

void kv_write(const std::string& path, const KvPairs& kv) {
    std::ofstream out(path);
    if (!out) throw data_error("kv_write: cannot write " + path);
    for (const auto& [k, v] : kv) out << k << "=" << v << "\n";
    if (!out) throw data_error("kv_write: write failure on " + path);
}

KvPairs kv_read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("kv_read: cannot open " + path);
    KvPairs kv;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::size_t eq = line.find('=', start);
        if (eq == std::string::npos) throw parse_error("kv_read: missing '=' in " + path, line_no);
        std::string key = line.substr(start, eq - start);
        std::string val = line.substr(eq + 1);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        while (!val.empty() && (val.back() == ' ' || val.back() == '\t' || val.back() == '\r'))
            val.pop_back();
        std::size_t vs = val.find_first_not_of(" \t");
        val = vs == std::string::npos ? "" : val.substr(vs);
        if (key.empty()) throw parse_error("kv_read: empty key in " + path, line_no);
        kv.emplace_back(key, val);
    }
    return kv;
}

const std::string* kv_find(const KvPairs& kv, const std::string& key) {
    for (const auto& [k, v] : kv)
        if (k == key) return &v;
    return nullptr;
}

}  // namespace palms

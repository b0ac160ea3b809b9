#pragma once

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

struct Row {
    std::map<std::string, std::string> cells;
    double num(const std::string& k) const { return std::stod(cells.at(k)); }
    const std::string& str(const std::string& k) const { return cells.at(k); }
};

inline std::vector<Row> read_csv(const std::string& name) {
    std::ifstream in(std::string(GBPWALK_TEST_DATA) + "/" + name);
    if (!in) throw std::runtime_error("missing test data " + name);
    std::string line;
    std::getline(in, line);
    std::vector<std::string> head;
    {
        std::stringstream ss(line);
        std::string h;
        while (std::getline(ss, h, ',')) head.push_back(h);
    }
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string v;
        Row r;
        for (const auto& h : head) {
            std::getline(ss, v, ',');
            r.cells[h] = v;
        }
        rows.push_back(r);
    }
    return rows;
}

inline double rel_err(double got, double ref) { return std::abs(got - ref) / std::max(std::abs(ref), 1e-300); }

}  // namespace testutil

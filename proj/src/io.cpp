// src/io.cpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#include "owg/io.hpp"

#include <cstdio>

namespace owg {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_metadata(std::ostream& os,
                    const std::vector<std::pair<std::string, std::string>>& kv) {
    for (const auto& [k, v] : kv) os << "# " << k << "=" << v << "\n";
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

} // namespace owg

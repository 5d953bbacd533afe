// owg/io.hpp
//
// Copyright 2026 The owgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0

#ifndef OWG_IO_HPP
#define OWG_IO_HPP

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace owg {

// 17 significant digits: round-trip exact for 64-bit doubles.
std::string fmt17(double v);

// "# key=value" metadata block ahead of the CSV header row.
void write_metadata(std::ostream& os,
                    const std::vector<std::pair<std::string, std::string>>& kv);

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);

} // namespace owg

#endif // OWG_IO_HPP

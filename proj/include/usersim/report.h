// Copyright 2026 The UserSim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef USERSIM_REPORT_H_
#define USERSIM_REPORT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "usersim/corpus.h"

namespace usersim {

enum class ReportFormat { kMarkdown, kJson };

ReportFormat ParseReportFormat(std::string_view name);

// Every result.json below `dir` (or `dir` itself if it is a file). Throws
// NoResults when there is none.
std::vector<Json> LoadResults(const std::filesystem::path& dir);

// Goal-fulfillment, lexical-diversity and breakdown-flag tables with one row
// per run, ordered by run id.
std::string RenderReport(std::vector<Json> results, ReportFormat format);

}  // namespace usersim

#endif  // USERSIM_REPORT_H_

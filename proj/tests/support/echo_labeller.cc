// Copyright 2026 The gazerev Authors.
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

// Stub labeller speaking the line-delimited JSON protocol on stdin/stdout.
// Labels echo the prefix tokens: pos = the token itself, head = index of
// the previous token (-1 for the first), deprel = "dep".
//
// Fault injection for transport tests:
//   --error-on TOKEN   answer {"error": ...} when the prefix ends in TOKEN
//   --omit TASK        never include TASK in responses
//   --wrong-id         answer with a different text_id
//   --exit-after N     exit after N responses
//   --garbage          answer with a line that is not JSON

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

int main(int argc, char** argv) {
  std::string error_on, omit;
  bool wrong_id = false, garbage = false;
  long exit_after = -1;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--error-on" && i + 1 < argc) error_on = argv[++i];
    else if (arg == "--omit" && i + 1 < argc) omit = argv[++i];
    else if (arg == "--wrong-id") wrong_id = true;
    else if (arg == "--garbage") garbage = true;
    else if (arg == "--exit-after" && i + 1 < argc) exit_after = std::atol(argv[++i]);
    else {
      std::cerr << "echo_labeller: unknown argument " << arg << "\n";
      return 2;
    }
  }

  long answered = 0;
  std::string line;
  while (std::getline(std::cin, line)) {
    if (exit_after >= 0 && answered >= exit_after) return 3;
    ++answered;
    if (garbage) {
      std::cout << "this is not json" << std::endl;
      continue;
    }
    nlohmann::ordered_json response;
    nlohmann::json request;
    try {
      request = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      response["error"] = std::string("malformed request: ") + e.what();
      std::cout << response.dump() << std::endl;
      continue;
    }
    const std::string text_id = request.value("text_id", "");
    const std::string prefix = request.value("prefix", "");
    std::vector<std::string> tokens;
    std::istringstream split(prefix);
    for (std::string tok; split >> tok;) tokens.push_back(tok);

    if (!error_on.empty() && !tokens.empty() && tokens.back() == error_on) {
      response["error"] = "refusing token '" + error_on + "'";
      std::cout << response.dump() << std::endl;
      continue;
    }
    response["text_id"] = wrong_id ? text_id + "-other" : text_id;
    nlohmann::ordered_json tasks = nlohmann::ordered_json::object();
    for (const auto& task : request.value("tasks", std::vector<std::string>{})) {
      if (task == omit) continue;
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (task == "pos") labels.push_back(tokens[i]);
        else if (task == "head") labels.push_back(std::to_string(static_cast<long>(i) - 1));
        else labels.push_back("dep");
      }
      tasks[task] = labels;
    }
    response["tasks"] = tasks;
    std::cout << response.dump() << std::endl;
  }
  return 0;
}

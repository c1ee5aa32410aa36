/*
Copyright 2026 The delayplace Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
// delayplace command-line front end. Builds the same JSON request the HTTP
// service accepts and runs it through the C API.
//
// Exit status: 0 success, 2 bad input, 3 domain error, 4 internal fault.

#include <cstdlib>
#include <deque>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "delayplace/delayplace.h"
#include "json.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitDomain = 3;
constexpr int kExitInternal = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Kind { Integer, Number, List, Rect, Grid, Initial, Text };

struct Field {
  std::string flag;
  std::string pointer;  // JSON pointer into the request body
  Kind kind;
  std::string help;
};

double to_number(const std::string& text, const std::string& flag) {
  const char* begin = text.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw UsageError(flag + ": '" + text + "' is not a number");
  }
  return v;
}

std::vector<double> to_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_number(item, flag));
  if (out.empty()) throw UsageError(flag + ": empty list");
  return out;
}

Json to_json_value(const std::string& text, const Field& f) {
  switch (f.kind) {
    case Kind::Integer: {
      const double v = to_number(text, f.flag);
      if (v != static_cast<double>(static_cast<long long>(v))) throw UsageError(f.flag + " must be an integer");
      return static_cast<long long>(v);
    }
    case Kind::Number: return to_number(text, f.flag);
    case Kind::List: return to_list(text, f.flag);
    case Kind::Rect: {
      auto r = to_list(text, f.flag);
      if (r.size() != 4) throw UsageError(f.flag + " expects x_min,x_max,y_min,y_max");
      return r;
    }
    case Kind::Grid: {
      auto g = to_list(text, f.flag);
      if (g.size() == 1) g.push_back(g[0]);
      if (g.size() != 2) throw UsageError(f.flag + " expects N or Ns,Nt");
      return Json::array({static_cast<long long>(g[0]), static_cast<long long>(g[1])});
    }
    case Kind::Initial: {
      if (!text.empty() && text.front() == '{') {
        try {
          return Json::parse(text);
        } catch (const nlohmann::json::exception&) {
          throw UsageError(f.flag + ": malformed JSON");
        }
      }
      const auto colon = text.find(':');
      if (colon == std::string::npos) {
        throw UsageError(f.flag + " expects family:values, e.g. constant:1 or trigonometric:1,6.28,1.57");
      }
      const std::string family = text.substr(0, colon);
      const auto values = to_list(text.substr(colon + 1), f.flag);
      auto need = [&](std::size_t count) {
        if (values.size() != count) throw UsageError(f.flag + ": " + family + " takes " + std::to_string(count) + " values");
      };
      if (family == "constant") {
        need(1);
        return Json{{"constant", values[0]}};
      }
      if (family == "polynomial") return Json{{"polynomial", values}};
      if (family == "exponential") {
        need(2);
        return Json{{"exponential", {{"A", values[0]}, {"gamma", values[1]}}}};
      }
      if (family == "trigonometric") {
        need(3);
        return Json{{"trigonometric", {{"A", values[0]}, {"omega", values[1]}, {"phi", values[2]}}}};
      }
      throw UsageError(f.flag + ": unknown family '" + family + "'");
    }
    case Kind::Text: return text;
  }
  return nullptr;
}

std::vector<Field> quasipoly_fields() {
  return {{"--n", "/q/n", Kind::Integer, "degree of P"},
          {"--m", "/q/m", Kind::Integer, "degree of Q"},
          {"--a", "/q/a", Kind::List, "a_0,...,a_{n-1}"},
          {"--b", "/q/b", Kind::List, "b_0,...,b_m"},
          {"--tau", "/q/tau", Kind::Number, "delay"}};
}

std::vector<Field> fields_for(const std::string& command) {
  if (command == "generic-mid") {
    return {{"--n", "/n", Kind::Integer, "degree of P"},
            {"--m", "/m", Kind::Integer, "degree of Q"},
            {"--tau", "/tau", Kind::Number, "delay"},
            {"--s0", "/s0", Kind::Number, "root of multiplicity n+m+1"}};
  }
  if (command == "generic-crrid") {
    return {{"--n", "/n", Kind::Integer, "degree of P"},
            {"--m", "/m", Kind::Integer, "degree of Q"},
            {"--tau", "/tau", Kind::Number, "delay"},
            {"--roots", "/roots", Kind::List, "n+m+1 real roots"}};
  }
  if (command == "control-mid") {
    return {{"--n", "/n", Kind::Integer, "degree of P"},
            {"--m", "/m", Kind::Integer, "degree of Q"},
            {"--a", "/a", Kind::List, "a_0,...,a_{n-1}"},
            {"--tau", "/given/tau", Kind::Number, "given delay"},
            {"--s0", "/given/s0", Kind::Number, "given root"},
            {"--s0-min", "/window/s0_min", Kind::Number, "lower end of the s0 search"},
            {"--tau-max", "/window/tau_max", Kind::Number, "upper end of the tau search"}};
  }
  if (command == "admissibility") {
    return {{"--n", "/n", Kind::Integer, "degree of P"},
            {"--m", "/m", Kind::Integer, "degree of Q"},
            {"--a", "/a", Kind::List, "a_0,...,a_{n-1}"},
            {"--s0-min", "/s0_min", Kind::Number, "left edge of the window (< 0)"},
            {"--tau-max", "/tau_max", Kind::Number, "top edge of the window (> 0)"},
            {"--grid", "/grid", Kind::Grid, "N or Ns,Nt samples"}};
  }
  auto q = quasipoly_fields();
  if (command == "roots") {
    q.push_back({"--rect", "/rect", Kind::Rect, "x_min,x_max,y_min,y_max"});
    q.push_back({"--s0", "/s0", Kind::Number, "assigned root to certify"});
  } else if (command == "sensitivity") {
    q.push_back({"--rect", "/rect", Kind::Rect, "x_min,x_max,y_min,y_max"});
    q.push_back({"--epsilon", "/epsilon", Kind::Number, "delay increment"});
    q.push_back({"--K", "/K", Kind::Integer, "steps each side"});
  } else if (command == "simulate") {
    q.push_back({"--T", "/T", Kind::Number, "final time"});
    q.push_back({"--steps", "/steps", Kind::Integer, "steps per delay"});
    q.push_back({"--ic", "/ic", Kind::Initial, "constant:c | polynomial:c0,c1,.. | exponential:A,g | trigonometric:A,w,phi"});
  } else if (command == "report") {
    return {{"--method", "/design/method", Kind::Text, "generic-mid | generic-crrid | control-mid"},
            {"--n", "/design/n", Kind::Integer, "degree of P"},
            {"--m", "/design/m", Kind::Integer, "degree of Q"},
            {"--a", "/design/a", Kind::List, "a_0,...,a_{n-1} (control-mid)"},
            {"--tau", "/design/tau", Kind::Number, "delay (generic modes)"},
            {"--s0", "/design/s0", Kind::Number, "root (generic-mid)"},
            {"--roots", "/design/roots", Kind::List, "roots (generic-crrid)"},
            {"--given-tau", "/design/given/tau", Kind::Number, "given delay (control-mid)"},
            {"--given-s0", "/design/given/s0", Kind::Number, "given root (control-mid)"},
            {"--rect", "/rect", Kind::Rect, "root window"},
            {"--T", "/simulation/T", Kind::Number, "final time"},
            {"--steps", "/simulation/steps", Kind::Integer, "steps per delay"},
            {"--ic", "/simulation/ic", Kind::Initial, "initial function"}};
  }
  return q;
}

constexpr std::pair<const char*, const char*> kCommands[] = {
    {"generic-mid", "root of multiplicity n+m+1 at s0"},
    {"generic-crrid", "n+m+1 prescribed real roots"},
    {"control-mid", "complete b for fixed a, given tau or s0"},
    {"admissibility", "admissible (s0, tau) region for fixed a"},
    {"roots", "all zeros inside a rectangle"},
    {"sensitivity", "root sets under delay perturbations"},
    {"simulate", "Euler method of steps"},
    {"report", "design, spectrum and simulation in one document"}};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int exit_code(dp_status status) {
  switch (status) {
    case DP_OK: return kExitOk;
    case DP_ERR_BAD_INPUT:
    case DP_ERR_MALFORMED_REQUEST: return kExitBadInput;
    case DP_ERR_INTERNAL: return kExitInternal;
    default: return kExitDomain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-system pole placement, root finding and simulation"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string input_path;
  std::string inline_json;
  std::string output_path;
  std::string format = "json";
  unsigned threads = 0;
  double deadline_ms = 0.0;
  app.add_option("-i,--input", input_path, "JSON request file");
  app.add_option("--json", inline_json, "inline JSON request");
  app.add_option("-o,--output", output_path, "write the document here instead of stdout");
  app.add_option("-f,--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--deadline-ms", deadline_ms, "abort after this many milliseconds");
  app.set_version_flag("--version", std::string(dp_version()));

  // Flag values are held as strings; conversion happens after parsing so
  // errors name the flag.
  std::deque<std::string> storage;
  std::vector<std::pair<CLI::App*, std::vector<std::pair<Field, CLI::Option*>>>> commands;
  for (const auto& [name, description] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, description);
    std::vector<std::pair<Field, CLI::Option*>> opts;
    for (const Field& f : fields_for(name)) {
      storage.emplace_back();
      opts.emplace_back(f, sub->add_option(f.flag, storage.back(), f.help)->allow_extra_args(false));
    }
    commands.emplace_back(sub, std::move(opts));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  dp_set_thread_budget(threads);

  std::string operation;
  Json body = Json::object();
  try {
    if (!input_path.empty() && !inline_json.empty()) throw UsageError("use either --input or --json");
    const std::string base = !input_path.empty() ? read_file(input_path) : inline_json;
    if (!base.empty()) {
      try {
        body = Json::parse(base);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed JSON request: ") + e.what());
      }
      if (!body.is_object()) throw UsageError("JSON request must be an object");
    }
    for (auto& [sub, opts] : commands) {
      if (!sub->parsed()) continue;
      operation = sub->get_name();
      for (auto& [field, opt] : opts) {
        if (opt->count() == 0) continue;
        body[Json::json_pointer(field.pointer)] = to_json_value(opt->as<std::string>(), field);
      }
    }
    if (deadline_ms > 0.0) body["deadline_ms"] = deadline_ms;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }

  dp_document* doc = nullptr;
  const dp_status status = dp_execute(operation.c_str(), body.dump().c_str(),
                                      format == "csv" ? DP_FORMAT_CSV : DP_FORMAT_JSON, &doc);
  if (doc == nullptr) {
    std::cerr << "error: " << dp_last_error() << "\n";
    return kExitInternal;
  }
  std::string text(dp_document_text(doc), dp_document_size(doc));
  dp_document_destroy(doc);
  if (status != DP_OK) {
    std::cerr << "error: " << dp_status_name(status) << ": " << dp_last_error() << "\n";
    std::cout << text << "\n";
    return exit_code(status);
  }

  if (format == "json") text += "\n";
  if (output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output_path, std::ios::binary);
    if (!(out << text)) {
      std::cerr << "error: cannot write " << output_path << "\n";
      return kExitBadInput;
    }
  }
  return kExitOk;
}

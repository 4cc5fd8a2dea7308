// Copyright 2026 The qrc-robustness Authors
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

#include "qrc/log.h"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace qrc {
namespace {

std::mutex& log_mutex() {
  static std::mutex m;
  return m;
}

LogLevel initial_threshold() {
  return std::getenv("QRC_QUIET") != nullptr ? LogLevel::kWarning : LogLevel::kInfo;
}

LogLevel& threshold_ref() {
  static LogLevel level = initial_threshold();
  return level;
}

LogSink& sink_ref() {
  static LogSink sink;
  return sink;
}

const char* level_name(LogLevel level) {
  switch (level) {
    case LogLevel::kDebug:
      return "debug";
    case LogLevel::kInfo:
      return "info";
    case LogLevel::kWarning:
      return "warning";
    case LogLevel::kError:
      return "error";
  }
  return "?";
}

}  // namespace

void set_log_threshold(LogLevel level) {
  std::lock_guard<std::mutex> lock(log_mutex());
  threshold_ref() = level;
}

LogLevel log_threshold() {
  std::lock_guard<std::mutex> lock(log_mutex());
  return threshold_ref();
}

LogSink set_log_sink(LogSink sink) {
  std::lock_guard<std::mutex> lock(log_mutex());
  LogSink old = std::move(sink_ref());
  sink_ref() = std::move(sink);
  return old;
}

void log(LogLevel level, const std::string& message) {
  std::lock_guard<std::mutex> lock(log_mutex());
  if (level < threshold_ref()) return;
  if (sink_ref()) {
    sink_ref()(level, message);
    return;
  }
  std::cerr << "[qrc " << level_name(level) << "] " << message << '\n';
}

}  // namespace qrc

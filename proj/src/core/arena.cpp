/*
 *   Copyright 2026 The TREES Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "trees/arena.hpp"

#include "trees/error.hpp"

namespace trees {

BufferId Arena::add_words(std::string name, std::vector<Word> init) {
  if (find(name)) {
    throw Error(ErrorCode::config, "duplicate arena buffer '" + name + "'");
  }
  buffers_.push_back({std::move(name), std::move(init)});
  return BufferId{static_cast<std::uint32_t>(buffers_.size() - 1)};
}

BufferId Arena::add_reals(std::string name, std::vector<double> init) {
  if (find(name)) {
    throw Error(ErrorCode::config, "duplicate arena buffer '" + name + "'");
  }
  buffers_.push_back({std::move(name), std::move(init)});
  return BufferId{static_cast<std::uint32_t>(buffers_.size() - 1)};
}

const Arena::Buffer& Arena::at(BufferId id) const {
  if (id.value >= buffers_.size()) {
    throw Error(ErrorCode::contract, "unknown arena buffer id " + std::to_string(id.value));
  }
  return buffers_[id.value];
}

Arena::Buffer& Arena::at(BufferId id) {
  return const_cast<Buffer&>(static_cast<const Arena&>(*this).at(id));
}

std::span<Word> Arena::words(BufferId id) {
  auto* v = std::get_if<std::vector<Word>>(&at(id).data);
  if (v == nullptr) {
    throw Error(ErrorCode::contract, "arena buffer '" + at(id).name + "' does not hold words");
  }
  return *v;
}

std::span<const Word> Arena::words(BufferId id) const {
  const auto* v = std::get_if<std::vector<Word>>(&at(id).data);
  if (v == nullptr) {
    throw Error(ErrorCode::contract, "arena buffer '" + at(id).name + "' does not hold words");
  }
  return *v;
}

std::span<double> Arena::reals(BufferId id) {
  auto* v = std::get_if<std::vector<double>>(&at(id).data);
  if (v == nullptr) {
    throw Error(ErrorCode::contract, "arena buffer '" + at(id).name + "' does not hold reals");
  }
  return *v;
}

std::span<const double> Arena::reals(BufferId id) const {
  const auto* v = std::get_if<std::vector<double>>(&at(id).data);
  if (v == nullptr) {
    throw Error(ErrorCode::contract, "arena buffer '" + at(id).name + "' does not hold reals");
  }
  return *v;
}

std::optional<BufferId> Arena::find(std::string_view name) const {
  for (std::size_t i = 0; i < buffers_.size(); ++i) {
    if (buffers_[i].name == name) {
      return BufferId{static_cast<std::uint32_t>(i)};
    }
  }
  return std::nullopt;
}

const std::string& Arena::name(BufferId id) const { return at(id).name; }

bool Arena::is_words(BufferId id) const {
  return std::holds_alternative<std::vector<Word>>(at(id).data);
}

}  // namespace trees

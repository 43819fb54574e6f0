/*
 * Copyright 2026 The mpts-synth Authors
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

#ifndef MPTS_IO_HPP
#define MPTS_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "mpts/model.hpp"

namespace mpts {

/**
 * Model JSON: an object with `players`, `cooperative`, `states`, `actions`,
 * `initial`, `atomic_props`, `labels` (state -> props), `dist`
 * (player -> state -> action -> probability) and `transitions` (records
 * `{state, joint, next}` with `joint` ordered by player).
 *
 * Parsing throws InputError for malformed JSON and unresolvable names only;
 * everything else is left to validate().
 */
Mpts parse_model(std::string_view json_text);
std::string model_to_json(const Mpts& model, int indent = 2);

/// Controller JSON: an object mapping state names to arrays of cooperative
/// action names ordered by cooperative-player index.
Controller parse_controller(const Mpts& model, std::string_view json_text);
std::string controller_to_json(const Mpts& model, const Controller& controller, int indent = 2);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace mpts

#endif  // MPTS_IO_HPP

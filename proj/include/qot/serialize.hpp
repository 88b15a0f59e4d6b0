#pragma once

// JSON forms of transcripts, commitment states and attack reports. Field
// order is fixed (ordered_json) so files diff cleanly across runs.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qot/attacks.hpp"
#include "qot/bitcommit.hpp"
#include "qot/rot.hpp"

namespace qot::io {

using Json = nlohmann::ordered_json;

// {n, theta, r[], strategy, basis_choices[], conclusive[{pos, val}]}
Json to_json(const rot::RotConfig& config, const rot::RotRun& run);
rot::RotRun rot_run_from_json(const Json& j);

Json to_json(const bc::SenderState& s);
Json to_json(const bc::ReceiverState& s);
Json to_json(const bc::OpenMessage& s);
bc::SenderState sender_state_from_json(const Json& j);
bc::ReceiverState receiver_state_from_json(const Json& j);
bc::OpenMessage open_message_from_json(const Json& j);

// Amplitudes are written as [re, im] pairs; missing qubits as null.
Json to_json(const bc::P5SenderState& s);
Json to_json(const bc::P5ReceiverState& s);
Json to_json(const bc::P5OpenMessage& s);
bc::P5SenderState p5_sender_from_json(const Json& j);
bc::P5ReceiverState p5_receiver_from_json(const Json& j);
bc::P5OpenMessage p5_open_from_json(const Json& j);

Json to_json(const bc::VerifyResult& r);
Json to_json(const attacks::CheatReport& r);
Json to_json(const attacks::ProbeAttackReport& r);
Json to_json(const attacks::OmissionOutcome& r);

// Malformed documents raise std::runtime_error naming the offending field.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace qot::io

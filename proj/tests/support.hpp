// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "botlens/corpus.hpp"
#include "botlens/fixture.hpp"
#include "botlens/timeutil.hpp"

namespace testing {

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("botlens-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline botlens::Timestamp ts(const char* text) { return *botlens::parse_timestamp(text); }

inline botlens::TweetRecord tweet(botlens::TweetId id, botlens::AccountId author,
                                  botlens::Timestamp t, std::string text = "hola") {
  botlens::TweetRecord r;
  r.tweet_id = id;
  r.author_id = author;
  r.created_at = t;
  r.text = std::move(text);
  return r;
}

inline botlens::TweetRecord retweet(botlens::TweetId id, botlens::AccountId retweeter,
                                    botlens::Timestamp t, botlens::AccountId author,
                                    botlens::Timestamp original_time,
                                    std::optional<std::string> original_text = std::nullopt) {
  botlens::TweetRecord r = tweet(id, retweeter, t, "RT @x: hola");
  botlens::OriginalRef o;
  o.tweet_id = id + 1'000'000;
  o.author_id = author;
  o.created_at = original_time;
  o.text = std::move(original_text);
  r.retweet_of = o;
  return r;
}

// Small targets that satisfy every fixture identity, drawn at random.
inline botlens::FixtureTargets random_targets(std::mt19937_64& rng) {
  auto draw = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  botlens::FixtureTargets t;
  const std::size_t humans = draw(1, 40);
  const std::size_t bots = draw(0, 15);
  t.accounts = humans + bots;
  t.bots = bots;
  t.hh = draw(0, 60);
  t.bh = bots > 0 ? draw(0, 30) : 0;
  t.hb = bots > 0 ? draw(0, 20) : 0;
  t.bb = bots > 0 ? draw(0, 10) : 0;
  t.missing = draw(0, 10);
  t.missing_by_bots = bots > 0 ? draw(0, t.missing) : 0;
  t.retweets = t.hh + t.hb + t.bh + t.bb + t.missing;
  const std::size_t bot_rt = t.hb + t.bb + t.missing_by_bots;
  const std::size_t human_rt = t.retweets - bot_rt;
  t.bot_authored = bots > 0 ? bot_rt + bots + draw(0, 20) : 0;
  const std::size_t human_tweets = human_rt + humans + draw(0, 40);
  t.tweets = t.bot_authored + human_tweets;
  t.url_human = draw(0, human_tweets + human_rt);
  t.url_bot = draw(0, t.bot_authored + bot_rt);
  return t;
}

}  // namespace testing

// Copyright 2026 The GeoQA Authors.
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

#include <algorithm>
#include <cctype>

#include "geoqa/nlp.h"
#include "geoqa/text.h"

namespace geoqa::nlp {

std::string_view posName(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "Noun";
    case Pos::kVerb: return "Verb";
    case Pos::kAdj: return "Adj";
    case Pos::kAdv: return "Adv";
    case Pos::kPron: return "Pron";
    case Pos::kPostp: return "Postp";
    case Pos::kPunc: return "Punc";
    case Pos::kNum: return "Num";
    case Pos::kConj: return "Conj";
    case Pos::kDet: return "Det";
  }
  return "Noun";
}

std::optional<Pos> parsePos(std::string_view name) {
  for (Pos p : {Pos::kNoun, Pos::kVerb, Pos::kAdj, Pos::kAdv, Pos::kPron, Pos::kPostp,
                Pos::kPunc, Pos::kNum, Pos::kConj, Pos::kDet}) {
    if (posName(p) == name) return p;
  }
  return std::nullopt;
}

std::string MorphAnalysis::lemmaKey() const { return text::foldTurkish(lemma); }

std::string MorphAnalysis::featureString() const {
  std::string out = text::join(features, "|");
  for (const Derivation& d : derivations) {
    out += "^DB|";
    out += posName(d.pos);
    for (const std::string& f : d.features) out += "|" + f;
  }
  return out.empty() ? "_" : out;
}

std::string MorphAnalysis::tagString() const {
  std::string out = lemma + "+" + std::string(posName(pos));
  for (const std::string& f : features) out += "+" + f;
  for (const Derivation& d : derivations) {
    out += "^DB+" + std::string(posName(d.pos));
    for (const std::string& f : d.features) out += "+" + f;
  }
  return out;
}

Pos MorphAnalysis::finalPos() const {
  return derivations.empty() ? pos : derivations.back().pos;
}

const std::vector<std::string>& MorphAnalysis::finalFeatures() const {
  return derivations.empty() ? features : derivations.back().features;
}

bool MorphAnalysis::hasFeature(std::string_view tag) const {
  auto in = [&](const std::vector<std::string>& fs) {
    return std::find(fs.begin(), fs.end(), tag) != fs.end();
  };
  if (in(features)) return true;
  return std::any_of(derivations.begin(), derivations.end(),
                     [&](const Derivation& d) { return in(d.features); });
}

LemmaLexicon LemmaLexicon::parse(std::string_view tsv) {
  LemmaLexicon lex;
  std::size_t lineNo = 0;
  for (const std::string& raw : text::split(tsv, '\n')) {
    ++lineNo;
    std::string line = text::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols = text::split(line, '\t');
    if (cols.size() != 2) {
      throw ParseError("lexicon", "expected lemma<TAB>POS", lineNo);
    }
    auto pos = parsePos(text::trim(cols[1]));
    if (!pos) throw ParseError("lexicon", "unknown POS '" + cols[1] + "'", lineNo);
    lex.add(text::trim(cols[0]), *pos);
  }
  return lex;
}

void LemmaLexicon::add(std::string_view lemma, Pos pos) {
  std::vector<Pos>& list = entries_[text::foldTurkish(lemma)];
  if (std::find(list.begin(), list.end(), pos) == list.end()) list.push_back(pos);
}

const std::vector<Pos>* LemmaLexicon::find(std::string_view foldedLemma) const {
  auto it = entries_.find(foldedLemma);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> LemmaLexicon::lemmas() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [lemma, poses] : entries_) out.push_back(lemma);
  return out;
}

namespace {

// Vowel classes for harmony. A two-way suffix vowel (a/e) follows the
// backness of the previous vowel; a four-way one (ı/i/u/ü) also follows
// rounding.
bool isBack(std::string_view v) { return v == "a" || v == "ı" || v == "o" || v == "u" || v == "â" || v == "û"; }
bool isRound(std::string_view v) { return v == "o" || v == "u" || v == "ö" || v == "ü" || v == "û"; }

std::string highVowelFor(std::string_view prev) {
  if (prev.empty()) return "i";
  if (isBack(prev)) return isRound(prev) ? "u" : "ı";
  return isRound(prev) ? "ü" : "i";
}

std::string lowVowelFor(std::string_view prev) {
  if (prev.empty()) return "e";
  return isBack(prev) ? "a" : "e";
}

bool harmonizes(std::string_view context, std::string_view form) {
  std::string sv;
  for (const std::string& cp : text::codePoints(form)) {
    if (text::isVowel(cp)) {
      sv = cp;
      break;
    }
  }
  if (sv.empty()) return true;
  std::string prev = text::lastVowel(context);
  if (prev.empty()) return true;
  if (sv == "a" || sv == "e") return sv == lowVowelFor(prev);
  return sv == highVowelFor(prev);
}

bool endsInVowel(std::string_view s) {
  std::vector<std::string> cps = text::codePoints(s);
  return !cps.empty() && text::isVowel(cps.back());
}

struct Suffix {
  std::string_view form;
  bool afterVowel;     // allomorph used after a vowel-final context
  bool afterConsonant;
};

using SuffixTable = std::vector<Suffix>;

const SuffixTable kPlural = {{"lar", true, true}, {"ler", true, true}};
const SuffixTable kPoss3sg = {{"sı", true, false}, {"si", true, false}, {"su", true, false},
                              {"sü", true, false}, {"ı", false, true},  {"i", false, true},
                              {"u", false, true},  {"ü", false, true}};
const SuffixTable kRel = {{"ki", true, true}};
const SuffixTable kCopula = {{"dır", true, true}, {"dir", true, true}, {"dur", true, true},
                             {"dür", true, true}, {"tır", false, true}, {"tir", false, true},
                             {"tur", false, true}, {"tür", false, true}};

struct CaseTable {
  std::string_view tag;
  SuffixTable plain;
  SuffixTable afterPossessive;
};

const std::vector<CaseTable>& caseTables() {
  static const std::vector<CaseTable> kTables = {
      {"Acc",
       {{"yı", true, false}, {"yi", true, false}, {"yu", true, false}, {"yü", true, false},
        {"ı", false, true}, {"i", false, true}, {"u", false, true}, {"ü", false, true}},
       {{"nı", true, true}, {"ni", true, true}, {"nu", true, true}, {"nü", true, true}}},
      {"Dat",
       {{"ya", true, false}, {"ye", true, false}, {"a", false, true}, {"e", false, true}},
       {{"na", true, true}, {"ne", true, true}}},
      {"Loc",
       {{"da", true, true}, {"de", true, true}, {"ta", false, true}, {"te", false, true}},
       {{"nda", true, true}, {"nde", true, true}}},
      {"Abl",
       {{"dan", true, true}, {"den", true, true}, {"tan", false, true}, {"ten", false, true}},
       {{"ndan", true, true}, {"nden", true, true}}},
      {"Gen",
       {{"nın", true, false}, {"nin", true, false}, {"nun", true, false}, {"nün", true, false},
        {"ın", false, true}, {"in", false, true}, {"un", false, true}, {"ün", false, true}},
       {{"nın", true, true}, {"nin", true, true}, {"nun", true, true}, {"nün", true, true}}},
  };
  return kTables;
}

// Calls `fn(form)` for every allomorph of `table` that can follow
// `context` and prefixes `rest`.
template <typename Fn>
void eachSuffix(const SuffixTable& table, std::string_view context, std::string_view rest,
                bool strictHarmony, Fn&& fn) {
  const bool vowel = endsInVowel(context);
  for (const Suffix& s : table) {
    if (vowel ? !s.afterVowel : !s.afterConsonant) continue;
    if (!text::startsWith(rest, s.form)) continue;
    if (strictHarmony && !harmonizes(context, s.form)) continue;
    fn(s.form);
  }
}

struct Nominal {
  std::vector<std::string> features;  // agreement, possessive, case
  std::vector<Derivation> derivations;
  bool inflected = false;             // any suffix besides the copula
};

Derivation copulaGroup() { return {Pos::kVerb, {"Zero", "Pres", "A3sg", "Cop"}}; }

// Enumerates nominal suffix sequences that consume all of `rest`.
std::vector<Nominal> parseNominal(std::string_view stem, std::string_view rest, bool strict) {
  std::vector<Nominal> out;
  auto finish = [&](std::string context, std::string_view r, Nominal n) {
    if (r.empty()) out.push_back(n);
    eachSuffix(kCopula, context, r, strict, [&](std::string_view f) {
      if (r.size() != f.size()) return;
      Nominal c = n;
      c.derivations.push_back(copulaGroup());
      out.push_back(c);
    });
  };
  auto cases = [&](std::string context, std::string_view r, Nominal n, bool possessive) {
    Nominal nom = n;
    nom.features.push_back("Nom");
    finish(context, r, nom);
    for (const CaseTable& ct : caseTables()) {
      const SuffixTable& table = possessive ? ct.afterPossessive : ct.plain;
      eachSuffix(table, context, r, strict, [&](std::string_view f) {
        Nominal c = n;
        c.features.push_back(std::string(ct.tag));
        c.inflected = true;
        std::string ctx = context + std::string(f);
        std::string_view after = r.substr(f.size());
        if (ct.tag == "Loc") {
          eachSuffix(kRel, ctx, after, false, [&](std::string_view k) {
            if (after.size() != k.size()) return;
            Nominal rel = c;
            rel.derivations.push_back({Pos::kAdj, {"Rel"}});
            out.push_back(rel);
          });
        }
        finish(ctx, after, c);
      });
    }
  };
  auto possessives = [&](std::string context, std::string_view r, Nominal n) {
    Nominal pnon = n;
    pnon.features.push_back("Pnon");
    cases(context, r, pnon, false);
    eachSuffix(kPoss3sg, context, r, strict, [&](std::string_view f) {
      Nominal c = n;
      c.features.push_back("P3sg");
      c.inflected = true;
      cases(context + std::string(f), r.substr(f.size()), c, true);
    });
  };
  Nominal sg;
  sg.features.push_back("A3sg");
  possessives(std::string(stem), rest, sg);
  eachSuffix(kPlural, stem, rest, strict, [&](std::string_view f) {
    Nominal pl;
    pl.features.push_back("A3pl");
    pl.inflected = true;
    possessives(std::string(stem) + std::string(f), rest.substr(f.size()), pl);
  });
  return out;
}

const SuffixTable kAorist = {{"r", true, false},  {"ar", false, true}, {"er", false, true},
                             {"ır", false, true}, {"ir", false, true}, {"ur", false, true},
                             {"ür", false, true}};
const SuffixTable kPresPart = {{"yan", true, false}, {"yen", true, false},
                               {"an", false, true},  {"en", false, true}};
const SuffixTable kPast = {{"dı", true, true}, {"di", true, true}, {"du", true, true},
                           {"dü", true, true}, {"tı", false, true}, {"ti", false, true},
                           {"tu", false, true}, {"tü", false, true}};
const SuffixTable kNegAorist = {{"maz", true, true}, {"mez", true, true}};

void parseVerb(const std::string& lemma, std::string_view stem, std::string_view rest,
               std::vector<MorphAnalysis>& out) {
  auto emit = [&](std::vector<std::string> feats, std::vector<Derivation> derivs = {}) {
    out.push_back(MorphAnalysis{lemma, Pos::kVerb, std::move(feats), std::move(derivs)});
  };
  if (rest.empty()) {
    emit({"Pos", "Imp", "A2sg"});
    return;
  }
  auto finite = [&](const SuffixTable& table, std::vector<std::string> base) {
    eachSuffix(table, stem, rest, false, [&](std::string_view f) {
      std::string ctx = std::string(stem) + std::string(f);
      std::string_view after = rest.substr(f.size());
      if (after.empty()) {
        auto fs = base;
        fs.push_back("A3sg");
        emit(fs);
      }
      eachSuffix(kPlural, ctx, after, true, [&](std::string_view p) {
        if (after.size() != p.size()) return;
        auto fs = base;
        fs.push_back("A3pl");
        emit(fs);
      });
    });
  };
  finite(kAorist, {"Pos", "Aor"});
  finite(kPast, {"Pos", "Past"});
  finite(kNegAorist, {"Neg", "Aor"});
  eachSuffix(kPresPart, stem, rest, false, [&](std::string_view f) {
    if (rest.size() == f.size()) emit({"Pos"}, {{Pos::kAdj, {"PresPart"}}});
  });
}

bool isInterrogative(std::string_view lemma) {
  static const std::vector<std::string_view> kWords = {"ne", "nere", "hangi", "hangisi", "kim", "kaç", "neresi"};
  return std::find(kWords.begin(), kWords.end(), lemma) != kWords.end();
}

void parsePostp(const std::string& lemma, std::string_view rest, std::vector<MorphAnalysis>& out) {
  auto emit = [&](std::vector<std::string> feats, std::vector<Derivation> derivs = {}) {
    out.push_back(MorphAnalysis{lemma, Pos::kPostp, std::move(feats), std::move(derivs)});
  };
  if (lemma == "mi") {
    static const std::vector<std::pair<std::string_view, std::string_view>> kPerson = {
        {"", "A3sg"},      {"sın", "A2sg"},   {"sin", "A2sg"},   {"sun", "A2sg"},
        {"sün", "A2sg"},   {"sınız", "A2pl"}, {"siniz", "A2pl"}, {"sunuz", "A2pl"},
        {"sünüz", "A2pl"}, {"dır", "A3sg"},   {"dir", "A3sg"},   {"dur", "A3sg"},
        {"dür", "A3sg"}};
    for (const auto& [form, agr] : kPerson) {
      if (rest == form) emit({"Ques", "Pres", std::string(agr)});
    }
    return;
  }
  if (lemma == "kadar") {
    if (rest.empty()) emit({"PCNom"});
    for (const Suffix& s : kCopula) {
      if (rest == s.form) {
        emit({"PCNom"}, {{Pos::kNoun, {"Zero", "A3sg", "Pnon", "Nom"}}, copulaGroup()});
      }
    }
    return;
  }
  if (rest.empty()) emit({});
}

void analyzeWithStem(const std::string& lemma, std::string_view stemSurface, std::string_view rest,
                     const LemmaLexicon& lexicon, std::vector<MorphAnalysis>& out) {
  const std::vector<Pos>* poses = lexicon.find(lemma);
  if (!poses) return;
  for (Pos pos : *poses) {
    switch (pos) {
      case Pos::kNoun:
      case Pos::kAdj:
      case Pos::kPron: {
        for (Nominal& n : parseNominal(stemSurface, rest, true)) {
          Pos p = pos;
          std::vector<std::string> feats = n.features;
          if (pos == Pos::kAdj) {
            if (n.inflected) {
              p = Pos::kNoun;
            } else {
              feats.clear();
            }
          }
          if (pos == Pos::kPron && isInterrogative(lemma)) feats.insert(feats.begin(), "Ques");
          out.push_back(MorphAnalysis{lemma, p, std::move(feats), std::move(n.derivations)});
        }
        break;
      }
      case Pos::kVerb:
        parseVerb(lemma, stemSurface, rest, out);
        break;
      case Pos::kPostp:
        parsePostp(lemma, rest, out);
        break;
      case Pos::kAdv:
      case Pos::kConj:
      case Pos::kDet:
      case Pos::kNum:
      case Pos::kPunc:
        if (rest.empty()) out.push_back(MorphAnalysis{lemma, pos, {}, {}});
        if (pos == Pos::kAdv) {
          for (const Suffix& s : kCopula) {
            if (rest == s.form) out.push_back(MorphAnalysis{lemma, pos, {}, {copulaGroup()}});
          }
        }
        break;
    }
  }
}

// Stem spellings that can stand for `stemSurface` before a vowel-initial
// suffix: consonant softening and dropped high vowels.
std::vector<std::string> stemRepairs(const std::string& stemSurface) {
  std::vector<std::string> out;
  std::vector<std::string> cps = text::codePoints(stemSurface);
  if (cps.size() < 2) return out;
  static const std::vector<std::pair<std::string_view, std::string_view>> kSoft = {
      {"ğ", "k"}, {"b", "p"}, {"c", "ç"}, {"d", "t"}, {"g", "k"}};
  std::string head;
  for (std::size_t i = 0; i + 1 < cps.size(); ++i) head += cps[i];
  for (const auto& [soft, hard] : kSoft) {
    if (cps.back() == soft) out.push_back(head + std::string(hard));
  }
  const std::string& a = cps[cps.size() - 2];
  const std::string& b = cps.back();
  if (!text::isVowel(a) && !text::isVowel(b)) {
    std::string before;
    for (std::size_t i = 0; i + 2 < cps.size(); ++i) before += cps[i];
    out.push_back(before + a + highVowelFor(text::lastVowel(before)) + b);
  }
  return out;
}

bool isPunctuation(std::string_view s) {
  return s == "?" || s == "." || s == "," || s == "!" || s == ";" || s == ":";
}

bool isNumber(std::string_view s) {
  if (s.empty()) return false;
  bool digit = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != '.' && c != ',') {
      return false;
    }
  }
  return digit;
}

std::vector<MorphAnalysis> lexiconAnalyses(const std::string& folded, const LemmaLexicon& lexicon) {
  std::vector<MorphAnalysis> out;
  std::vector<std::string> cps = text::codePoints(folded);
  std::string stem;
  for (std::size_t k = 0; k < cps.size(); ++k) {
    stem += cps[k];
    std::string_view rest = std::string_view(folded).substr(stem.size());
    analyzeWithStem(stem, stem, rest, lexicon, out);
    if (!rest.empty() && text::isVowel(text::codePoints(rest).front())) {
      for (const std::string& repaired : stemRepairs(stem)) {
        analyzeWithStem(repaired, stem, rest, lexicon, out);
      }
    }
    // "mı", "mu", "mü" share the lemma "mi"
    if (k == 1 && (stem == "mı" || stem == "mu" || stem == "mü")) {
      analyzeWithStem("mi", stem, rest, lexicon, out);
    }
  }
  return out;
}

MorphAnalysis properNoun(std::string lemma, std::vector<std::string> nominal = {"A3sg", "Pnon", "Nom"},
                         std::vector<Derivation> derivs = {}) {
  std::vector<std::string> feats = {"Prop"};
  feats.insert(feats.end(), nominal.begin(), nominal.end());
  return MorphAnalysis{std::move(lemma), Pos::kNoun, std::move(feats), std::move(derivs)};
}

}  // namespace

std::vector<MorphAnalysis> analyzeMorphology(const Token& token, const LemmaLexicon& lexicon) {
  const std::string& surface = token.surface;
  if (isPunctuation(surface)) return {MorphAnalysis{surface, Pos::kPunc, {}, {}}};
  if (isNumber(surface)) return {MorphAnalysis{surface, Pos::kNum, {"Card"}, {}}};

  std::size_t apos = surface.find('\'');
  std::size_t aposLen = 1;
  if (apos == std::string::npos) {
    apos = surface.find("’");
    aposLen = 3;
  }
  if (apos != std::string::npos && apos > 0) {
    const std::string pre = surface.substr(0, apos);
    const std::string tail = surface.substr(apos + aposLen);
    std::vector<MorphAnalysis> out = lexiconAnalyses(text::foldTurkish(pre + tail), lexicon);
    // the apostrophe must sit on a suffix boundary of a known stem
    std::vector<MorphAnalysis> preReadings = lexiconAnalyses(text::foldTurkish(pre), lexicon);
    std::erase_if(out, [&](const MorphAnalysis& a) {
      return std::none_of(preReadings.begin(), preReadings.end(),
                          [&](const MorphAnalysis& p) { return p.lemma == a.lemma; });
    });
    if (!out.empty()) return out;
    for (Nominal& n : parseNominal(text::foldTurkish(pre), text::foldTurkish(tail), false)) {
      out.push_back(properNoun(pre, n.features, n.derivations));
    }
    if (out.empty()) out.push_back(properNoun(pre));
    return out;
  }

  std::vector<MorphAnalysis> out = lexiconAnalyses(text::foldTurkish(surface), lexicon);
  if (out.empty()) out.push_back(properNoun(surface));
  return out;
}

}  // namespace geoqa::nlp

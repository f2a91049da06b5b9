# Copyright 2026 The GeoQA Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


"""Regenerates data/suite.jsonl.

Gold answers come from a plain scan of the schema and instance files,
with inverse, symmetric and subclass entailments applied by hand. The
query engine is not involved.
"""

import argparse
import json
import pathlib
from collections import defaultdict

ROOT = pathlib.Path(__file__).resolve().parent.parent


def license_header():
    text = pathlib.Path(__file__).read_text(encoding="utf-8").split("\n\n", 1)[0]
    return text + "\n"
DATA = ROOT / "data"


class Store:
    def __init__(self, schema_path, instance_path):
        self.inverse = {}
        self.symmetric = set()
        self.objprops = set()
        self.parents = defaultdict(set)
        for line in schema_path.read_text(encoding="utf-8").splitlines():
            parts = line.split("#", 1)[0].split()
            if not parts:
                continue
            if parts[0] == "subclass":
                self.parents[parts[1]].add(parts[2])
            elif parts[0] == "objprop":
                name = parts[1]
                self.objprops.add(name)
                if "symmetric" in parts:
                    self.symmetric.add(name)
                if "inverse" in parts:
                    other = parts[parts.index("inverse") + 1]
                    self.inverse[name] = other
                    self.inverse[other] = name

        self.cls = {}
        self.edges = set()  # (s, p, o) between individuals
        self.values = defaultdict(list)  # (s, p) -> literal strings
        for line in instance_path.read_text(encoding="utf-8").splitlines():
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if cols[0] == "individual":
                self.cls[cols[1]] = cols[2]
        for line in instance_path.read_text(encoding="utf-8").splitlines():
            if not line or line.startswith("#"):
                continue
            cols = line.split("\t")
            if cols[0] != "assert":
                continue
            s, p, o = cols[1], cols[2], cols[3]
            if p in self.objprops:
                self.edges.add((s, p, o))
            else:
                self.values[(s, p)].append(o)

        # Entailments, to a fixpoint. Class membership already follows the
        # subclass chain through types().
        changed = True
        while changed:
            changed = False
            for s, p, o in list(self.edges):
                extra = []
                if p in self.inverse:
                    extra.append((o, self.inverse[p], s))
                if p in self.symmetric:
                    extra.append((o, p, s))
                for t in extra:
                    if t not in self.edges:
                        self.edges.add(t)
                        changed = True

    def types(self, ind):
        out, todo = set(), [self.cls[ind]]
        while todo:
            c = todo.pop()
            if c not in out:
                out.add(c)
                todo.extend(self.parents[c])
        return out

    def of_class(self, c):
        return [i for i in self.cls if c in self.types(i)]

    def linked(self, s, p):
        return [o for (a, q, o) in self.edges if a == s and q == p]

    def value(self, s, p):
        vals = self.values.get((s, p), [])
        return vals[0] if vals else None


def iri(local):
    return "ins:" + local


def num(text):
    return float(text)


def extreme(st, candidates, prop, pick):
    scored = [(num(st.value(c, prop)), c) for c in candidates if st.value(c, prop) is not None]
    if not scored:
        return []
    best = pick(v for v, _ in scored)
    return sorted(iri(c) for v, c in scored if v == best)


def total(st, items, prop):
    vals = [st.value(i, prop) for i in items if st.value(i, prop) is not None]
    if all("." not in v for v in vals):
        return str(sum(int(v) for v in vals))
    return repr(sum(float(v) for v in vals))


def build(st):
    """(question, gold, tags, goldQuery) tuples."""
    def cls_linked(entity, prop, cls):
        return sorted(set(o for o in st.linked(entity, prop) if cls in st.types(o)))

    def cls_linking(entity, prop, cls):
        # ?y prop entity
        return sorted(set(s for (s, p, o) in st.edges if p == prop and o == entity and cls in st.types(s)))

    def vals(items, prop):
        return sorted(set(st.value(i, prop) for i in items if st.value(i, prop) is not None))

    def iris(items):
        return [iri(i) for i in items]

    ege_cities = cls_linked("EgeBolgesi", "konumVar", "Sehir")
    out = []
    add = lambda q, gold, tags, query=None: out.append((q, gold, tags, query))

    # Worked examples.
    add("Ankara iline komşu olan illeri gösterir misin ?",
        iris(cls_linking("Ankara", "komsu", "Sehir")), ["QT1", "sample"],
        'SELECT ?y WHERE { ?x rdf:type geo_turkce:Sehir . ?y rdf:type geo_turkce:Sehir . '
        '?y ins:komsu ?x . FILTER(regex(str(?x),"Ankara", "i")) }')
    add("Ege Bölgesi'nin yüzölçümü ne kadardır?",
        [st.value("EgeBolgesi", "yuzolcumu")], ["QT1", "sample"],
        'SELECT ?variable WHERE { ?x rdf:type geo_turkce:Bolge . ?x ins:yuzolcumu ?variable . '
        'FILTER(regex(str(?x),"Ege","i")) }')
    add("Ege Bölgesi'ndeki şehirlerin nüfuslarını gösterir misin ?",
        vals(ege_cities, "populasyon"), ["QT1", "sample", "possessive"],
        'SELECT ?variable WHERE { ?x rdf:type geo_turkce:Sehir . ?y rdf:type geo_turkce:Bolge . '
        '?y ins:konumVar ?x . ?x ins:populasyon ?variable . FILTER(regex(str(?y),"Ege","i")) }')
    add("Türkiye'nin en derin denizi hangisidir?",
        extreme(st, cls_linking("Turkiye", "konumlanir", "Deniz"), "derinlik", max), ["QT2", "sample", "max"])

    # Curriculum-style questions.
    add("Lütfen, Türkiye'deki şehirleri listeler misiniz?",
        iris(cls_linking("Turkiye", "konumlanir", "Sehir")), ["QT1", "competency", "multi-class"])
    add("İzmir'in komşularını gösterir misin?",
        iris(cls_linking("Izmir", "komsu", "Sehir")), ["QT1", "competency", "possessive"])
    add("Akdeniz Bölgesi'nde bulunan dağları gösterir misin?",
        iris(cls_linking("AkdenizBolgesi", "konumlanir", "Dag")), ["QT1", "competency", "multi-class"])
    add("Manisa şehrinin çevresinde hangi şehirler konumlanır?",
        iris(cls_linking("Manisa", "komsu", "Sehir")), ["QT1", "competency"])
    add("İzmir'in en yüksek dağı hangisidir?",
        extreme(st, cls_linking("Izmir", "konumlanir", "Dag"), "yukseklik", max), ["QT2", "competency", "max"])
    add("Ege Bölgesi'ndeki nehirlerin uzunluklarını gösterir misin?",
        vals(cls_linking("EgeBolgesi", "konumlanir", "Nehir"), "uzunluk"),
        ["QT1", "competency", "possessive", "multi-class"])
    add("Türkiye'de en fazla yağış alan il hangisidir?",
        extreme(st, cls_linking("Turkiye", "konumlanir", "Sehir"), "ortYagis", max), ["QT2", "competency", "max"])

    # Informative questions.
    add("İzmir şehri hangi bölgededir ?",
        iris(cls_linked("Izmir", "konumlanir", "Bolge")), ["QT1", "multi-class"])
    add("Antalya şehri hangi bölgededir?",
        iris(cls_linked("Antalya", "konumlanir", "Bolge")), ["QT1", "multi-class"])
    add("İstanbul hangi bölgededir?",
        iris(cls_linked("Istanbul", "konumlanir", "Bolge")), ["QT1"])
    add("Çukurova hangi bölgededir?",
        iris(cls_linked("Cukurova", "konumlanir", "Bolge")), ["QT1"])
    add("Van Gölü hangi şehirdedir ?",
        iris(cls_linked("VanGolu", "konumlanir", "Sehir")), ["QT1", "multi-class"])
    add("Erciyes Dağı hangi şehirdedir?",
        iris(cls_linked("Erciyes", "konumlanir", "Sehir")), ["QT1", "multi-class"])
    add("Tuz Gölü hangi bölgededir?",
        iris(cls_linked("TuzGolu", "konumlanir", "Bolge")), ["QT1", "multi-class"])
    add("Ankara'nın komşularını gösterir misin ?",
        iris(cls_linking("Ankara", "komsu", "Sehir")), ["QT1", "possessive"])
    add("Türkiye'nin komşularını gösterir misin?",
        iris(cls_linking("Turkiye", "komsu", "Ulke")), ["QT1", "possessive"])
    add("Türkiye'ye komşu olan ülkeleri gösterir misin?",
        iris(cls_linking("Turkiye", "komsu", "Ulke")), ["QT1"])
    add("Ege Bölgesi'nin komşularını gösterir misin?",
        iris(cls_linking("EgeBolgesi", "komsu", "Bolge")), ["QT1", "possessive"])
    add("Marmara Bölgesi'ndeki şehirleri gösterir misin ?",
        iris(cls_linked("MarmaraBolgesi", "konumVar", "Sehir")), ["QT1", "multi-class"])
    add("İç Anadolu Bölgesi'ndeki gölleri gösterir misin?",
        iris(cls_linked("IcAnadoluBolgesi", "konumVar", "Gol")), ["QT1", "multi-class"])
    add("Türkiye'deki ovaları gösterir misin?",
        iris(cls_linking("Turkiye", "konumlanir", "Ova")), ["QT1"])
    add("İzmir'in ilçelerini gösterir misin?",
        iris(cls_linked("Izmir", "konumVar", "Ilce")), ["QT1", "possessive"])
    add("Türkiye'nin başkenti neresidir ?", [st.value("Turkiye", "baskent")], ["QT1", "possessive"])
    add("İzmir'in nüfusu nedir ?", [st.value("Izmir", "populasyon")], ["QT1", "possessive"])
    add("Ankara'nın nüfusu nedir?", [st.value("Ankara", "populasyon")], ["QT1", "possessive"])
    add("Türkiye'nin yüzölçümü nedir?", [st.value("Turkiye", "yuzolcumu")], ["QT1", "possessive"])
    add("Konya'nın yüzölçümü nedir?", [st.value("Konya", "yuzolcumu")], ["QT1", "possessive"])
    add("Erzurum'un yüksekliği nedir?", [st.value("Erzurum", "yukseklik")], ["QT1", "possessive"])
    add("Dicle nehrinin uzunluğu nedir?", [st.value("Dicle", "uzunluk")], ["QT1", "possessive"])
    add("Türkiye'nin iklimi nedir?", [st.value("Turkiye", "iklim")], ["QT1", "possessive"])
    add("Ege Bölgesi'nin bitki örtüsü nedir?", [st.value("EgeBolgesi", "bitkiOrtusu")], ["QT1", "possessive"])
    add("Akdeniz Bölgesi'ndeki şehirlerin nüfuslarını gösterir misin?",
        vals(cls_linked("AkdenizBolgesi", "konumVar", "Sehir"), "populasyon"), ["QT1", "possessive", "multi-class"])
    add("Karadeniz Bölgesi'ndeki şehirlerin yağışlarını gösterir misin?",
        vals(cls_linked("KaradenizBolgesi", "konumVar", "Sehir"), "ortYagis"), ["QT1", "possessive", "multi-class"])
    add("Marmara Bölgesi'ndeki şehirlerin yüzölçümlerini gösterir misin?",
        vals(cls_linked("MarmaraBolgesi", "konumVar", "Sehir"), "yuzolcumu"), ["QT1", "possessive", "multi-class"])

    # Quantitative questions.
    tr_cities = cls_linking("Turkiye", "konumlanir", "Sehir")
    add("Türkiye'nin en uzun nehri hangisidir ?",
        extreme(st, cls_linking("Turkiye", "konumlanir", "Nehir"), "uzunluk", max), ["QT2", "max"])
    add("Türkiye'nin en kısa nehri hangisidir?",
        extreme(st, cls_linking("Turkiye", "konumlanir", "Nehir"), "uzunluk", min), ["QT2", "min"])
    add("Türkiye'nin en yüksek dağı hangisidir ?",
        extreme(st, cls_linking("Turkiye", "konumlanir", "Dag"), "yukseklik", max), ["QT2", "max"])
    add("Türkiye'nin en alçak dağı hangisidir?",
        extreme(st, cls_linking("Turkiye", "konumlanir", "Dag"), "yukseklik", min), ["QT2", "min"])
    add("Türkiye'nin en küçük şehri hangisidir ?", extreme(st, tr_cities, "yuzolcumu", min), ["QT2", "min"])
    add("Türkiye'nin en kalabalık şehri hangisidir?", extreme(st, tr_cities, "populasyon", max), ["QT2", "max"])
    add("Türkiye'nin en sıcak şehri hangisidir?", extreme(st, tr_cities, "sicaklik", max), ["QT2", "max"])
    add("Türkiye'nin en soğuk şehri hangisidir?", extreme(st, tr_cities, "sicaklik", min), ["QT2", "min"])
    add("Türkiye'nin en derin gölü hangisidir?",
        extreme(st, cls_linking("Turkiye", "konumlanir", "Gol"), "derinlik", max), ["QT2", "max"])
    add("Türkiye'nin en sığ denizi hangisidir?",
        extreme(st, cls_linking("Turkiye", "konumlanir", "Deniz"), "derinlik", min), ["QT2", "min"])
    add("Türkiye'nin en tuzlu denizi hangisidir?",
        extreme(st, cls_linking("Turkiye", "konumlanir", "Deniz"), "tuzluluk", max), ["QT2", "max"])
    add("İç Anadolu Bölgesi'nin en yüksek dağı hangisidir?",
        extreme(st, cls_linking("IcAnadoluBolgesi", "konumlanir", "Dag"), "yukseklik", max),
        ["QT2", "max", "possessive", "multi-class"])
    add("Ege Bölgesi'nin en kalabalık şehri hangisidir?",
        extreme(st, ege_cities, "populasyon", max), ["QT2", "max", "possessive", "multi-class"])
    add("Ege Bölgesi'nin en büyük şehri hangisidir?",
        extreme(st, ege_cities, "yuzolcumu", max), ["QT2", "max", "possessive", "multi-class"])
    add("Akdeniz Bölgesi'nin en sıcak şehri hangisidir?",
        extreme(st, cls_linked("AkdenizBolgesi", "konumVar", "Sehir"), "sicaklik", max),
        ["QT2", "max", "possessive", "multi-class"])
    add("Karadeniz Bölgesi'nde en çok yağış alan şehir hangisidir ?",
        extreme(st, cls_linked("KaradenizBolgesi", "konumVar", "Sehir"), "ortYagis", max),
        ["QT2", "max", "multi-class"])
    add("Karadeniz Bölgesi'nin en az yağış alan şehri hangisidir?",
        extreme(st, cls_linked("KaradenizBolgesi", "konumVar", "Sehir"), "ortYagis", min),
        ["QT2", "min", "possessive", "multi-class"])
    add("Ege Bölgesi'nde en fazla yağış alan şehir hangisidir?",
        extreme(st, ege_cities, "ortYagis", max), ["QT2", "max", "multi-class"])
    add("Ege Bölgesi'nde kaç şehir vardır ?", [str(len(ege_cities))], ["QT2", "count", "multi-class"])
    add("Marmara Bölgesi'nde kaç şehir vardır?",
        [str(len(cls_linked("MarmaraBolgesi", "konumVar", "Sehir")))], ["QT2", "count", "multi-class"])
    add("Türkiye'de kaç tane göl vardır ?",
        [str(len(cls_linking("Turkiye", "konumlanir", "Gol")))], ["QT2", "count"])
    add("Türkiye'de kaç tane nehir vardır?",
        [str(len(cls_linking("Turkiye", "konumlanir", "Nehir")))], ["QT2", "count"])
    add("Türkiye'de kaç ada vardır?", [str(len(cls_linking("Turkiye", "konumlanir", "Ada")))], ["QT2", "count"])
    add("Konya'da kaç göl vardır?", [str(len(cls_linking("Konya", "konumlanir", "Gol")))], ["QT2", "count"])
    add("Kaç ülke Türkiye'ye komşudur?", [str(len(cls_linking("Turkiye", "komsu", "Ulke")))], ["QT2", "count"])
    add("Ege Bölgesi'ndeki şehirlerin toplam nüfusu nedir ?",
        [total(st, ege_cities, "populasyon")], ["QT2", "sum", "possessive", "multi-class"])
    add("Akdeniz Bölgesi'ndeki şehirlerin toplam nüfusu nedir?",
        [total(st, cls_linked("AkdenizBolgesi", "konumVar", "Sehir"), "populasyon")],
        ["QT2", "sum", "possessive", "multi-class"])
    add("Karadeniz Bölgesi'ndeki şehirlerin toplam yüzölçümü nedir?",
        [total(st, cls_linked("KaradenizBolgesi", "konumVar", "Sehir"), "yuzolcumu")],
        ["QT2", "sum", "possessive", "multi-class"])

    # Outside what either method handles, or outside the data.
    add("En yüksek dağ hangisidir ?",
        extreme(st, st.of_class("Dag"), "yukseklik", max), ["QT2", "max", "no-entity"])
    add("Zürafalar nerede yaşar ?", [], ["unanswerable"])
    add("Mars'ın nüfusu nedir?", [], ["unanswerable"])
    add("Ankara ve İzmir arasındaki mesafe nedir ?", [], ["unanswerable"])
    add("Türkiye'nin en büyük gölü hangisidir?", [], ["unanswerable"])
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--schema", default=DATA / "geo_tr.schema", type=pathlib.Path)
    ap.add_argument("--instances", default=DATA / "geo_tr_instances.tsv", type=pathlib.Path)
    ap.add_argument("--output", default=DATA / "suite.jsonl", type=pathlib.Path)
    args = ap.parse_args()
    st = Store(args.schema, args.instances)
    lines = []
    for question, gold, tags, query in build(st):
        if not gold and "unanswerable" not in tags:
            raise SystemExit(f"empty gold for: {question}")
        rec = {"question": question, "gold": gold, "tags": tags}
        if query:
            rec["goldQuery"] = query
        lines.append(json.dumps(rec, ensure_ascii=False))
    args.output.write_text(license_header() + "\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} records to {args.output}")


if __name__ == "__main__":
    main()

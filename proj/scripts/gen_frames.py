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


"""Regenerates data/qt2_frames.jsonl, the labeled QT2 question set.

Each record carries the five frame slots. Category names are restricted
to the classifier's label sets; "null" marks an empty slot.
"""

import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent


def license_header():
    text = pathlib.Path(__file__).read_text(encoding="utf-8").split("\n\n", 1)[0]
    return text + "\n"

# (name, locative, genitive)
REGIONS = [
    ("Marmara Bölgesi", "Marmara Bölgesi'nde", "Marmara Bölgesi'nin"),
    ("Ege Bölgesi", "Ege Bölgesi'nde", "Ege Bölgesi'nin"),
    ("Akdeniz Bölgesi", "Akdeniz Bölgesi'nde", "Akdeniz Bölgesi'nin"),
    ("İç Anadolu Bölgesi", "İç Anadolu Bölgesi'nde", "İç Anadolu Bölgesi'nin"),
    ("Karadeniz Bölgesi", "Karadeniz Bölgesi'nde", "Karadeniz Bölgesi'nin"),
    ("Doğu Anadolu Bölgesi", "Doğu Anadolu Bölgesi'nde", "Doğu Anadolu Bölgesi'nin"),
    ("Güneydoğu Anadolu Bölgesi", "Güneydoğu Anadolu Bölgesi'nde", "Güneydoğu Anadolu Bölgesi'nin"),
]
CITIES = [
    ("Konya", "Konya'da", "Konya'nın"),
    ("İzmir", "İzmir'de", "İzmir'in"),
    ("Van", "Van'da", "Van'ın"),
    ("Isparta", "Isparta'da", "Isparta'nın"),
    ("Kayseri", "Kayseri'de", "Kayseri'nin"),
    ("Antalya", "Antalya'da", "Antalya'nın"),
]

# noun (possessed form), class
POSSESSED = {"Sehir": "şehri", "Dag": "dağı", "Nehir": "nehri", "Gol": "gölü", "Deniz": "denizi", "Ova": "ovası"}
PLURAL_LOC = {"Sehir": "şehirlerin", "Gol": "göllerin", "Dag": "dağların", "Nehir": "nehirlerin"}
COUNT_NOUN = {"Sehir": "şehir", "Gol": "göl", "Dag": "dağ", "Nehir": "nehir", "Ada": "ada", "Ova": "ova",
              "Deniz": "deniz", "Ilce": "ilçe"}

SUPERLATIVES = [
    # adjective, data property, function, target classes it is used with
    ("derin", "derinlik", "max", ["Deniz", "Gol"]),
    ("sığ", "derinlik", "min", ["Deniz", "Gol"]),
    ("yüksek", "yukseklik", "max", ["Dag"]),
    ("alçak", "yukseklik", "min", ["Dag"]),
    ("tuzlu", "tuzluluk", "max", ["Deniz"]),
    ("kalabalık", "populasyon", "max", ["Sehir"]),
    ("büyük", "yuzolcumu", "max", ["Sehir"]),
    ("küçük", "yuzolcumu", "min", ["Sehir"]),
    ("sıcak", "sicaklik", "max", ["Sehir"]),
    ("soğuk", "sicaklik", "min", ["Sehir"]),
]


def frame(question, target, entity, data, obj, fn):
    return {"question": question, "target_class": target, "entity_class": entity,
            "data_property": data, "object_property": obj, "function_name": fn}


def build():
    out = []
    # Country-wide superlatives.
    for adj, prop, fn, targets in SUPERLATIVES:
        for t in targets:
            out.append(frame(f"Türkiye'nin en {adj} {POSSESSED[t]} hangisidir?", t, "Ulke", prop, "konumlanir", fn))
    out.append(frame("Türkiye'de en fazla yağış alan il hangisidir?", "Sehir", "Ulke", "ortYagis", "konumlanir", "max"))
    out.append(frame("Türkiye'de en az yağış alan şehir hangisidir?", "Sehir", "Ulke", "ortYagis", "konumlanir", "min"))
    out.append(frame("Türkiye'de en çok yağış alan şehir hangisidir?", "Sehir", "Ulke", "ortYagis", "konumlanir", "max"))

    # Regional superlatives: rotate adjectives over regions.
    city_sups = [s for s in SUPERLATIVES if "Sehir" in s[3]]
    for i, (_, loc, gen) in enumerate(REGIONS):
        for k in range(2):
            adj, prop, fn, _ = city_sups[(2 * i + k) % len(city_sups)]
            out.append(frame(f"{gen} en {adj} şehri hangisidir?", "Sehir", "Bolge", prop, "konumlanir", fn))
        out.append(frame(f"{gen} en yüksek dağı hangisidir?", "Dag", "Bolge", "yukseklik", "konumlanir", "max"))
        rain_fn = "max" if i % 2 == 0 else "min"
        word = "fazla" if rain_fn == "max" else "az"
        out.append(frame(f"{loc} en {word} yağış alan şehir hangisidir?", "Sehir", "Bolge", "ortYagis",
                         "konumlanir", rain_fn))

    # Counts.
    for _, loc, _ in REGIONS:
        out.append(frame(f"{loc} kaç şehir vardır?", "Sehir", "Bolge", None, "konumlanir", "count"))
    for i, (_, loc, _) in enumerate(REGIONS):
        noun = ["göl", "dağ", "nehir"][i % 3]
        cls = {"göl": "Gol", "dağ": "Dag", "nehir": "Nehir"}[noun]
        out.append(frame(f"{loc} kaç tane {noun} vardır?", cls, "Bolge", None, "konumlanir", "count"))
    for cls in ["Gol", "Nehir", "Dag", "Ada", "Ova", "Deniz", "Sehir"]:
        out.append(frame(f"Türkiye'de kaç tane {COUNT_NOUN[cls]} vardır?", cls, "Ulke", None, "konumlanir", "count"))
    for i, (_, loc, _) in enumerate(CITIES):
        cls = ["Gol", "Dag", "Ilce"][i % 3]
        out.append(frame(f"{loc} kaç {COUNT_NOUN[cls]} vardır?", cls, "Sehir", None, "konumlanir", "count"))
    out.append(frame("Kaç ülke Türkiye'ye komşudur?", "Ulke", "Ulke", None, "komsu", "count"))

    # Sums.
    for i, (_, loc, _) in enumerate(REGIONS):
        prop, word = [("populasyon", "nüfusu"), ("yuzolcumu", "yüzölçümü")][i % 2]
        out.append(frame(f"{loc}ki şehirlerin toplam {word} nedir?", "Sehir", "Bolge", prop,
                         "konumlanir", "sum"))
    out.append(frame("Türkiye'deki şehirlerin toplam nüfusu nedir?", "Sehir", "Ulke", "populasyon", "konumlanir", "sum"))
    out.append(frame("Türkiye'deki şehirlerin toplam yüzölçümü nedir?", "Sehir", "Ulke", "yuzolcumu", "konumlanir", "sum"))
    return out


def main():
    path = ROOT / "data" / "qt2_frames.jsonl"
    records = build()
    path.write_text(license_header() + "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records), encoding="utf-8")
    print(f"wrote {len(records)} frames to {path}")


if __name__ == "__main__":
    main()

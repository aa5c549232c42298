#!/usr/bin/env python3
# Copyright 2026 The emergekg Authors.
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

"""Regenerates data/fixtures/saeedeh.

Writes the snippet list and page files, runs `emergekg fetch` over them to
obtain each document's raw text, then writes annotation files whose byte
offsets point at every occurrence of the listed entity surfaces.

usage: build_saeedeh_fixture.py <path-to-emergekg-binary>
"""

import json
import pathlib
import re
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parents[2]
OUT = ROOT / "data" / "fixtures" / "saeedeh"
QUERY = "Saeedeh Shekarpour"

SNIPPETS = [
    {
        "rank": 1,
        "title": "Saeedeh Shekarpour : University of Dayton, Ohio",
        "body": (
            "Saeedeh Shekarpour Assistant Professor Department of Computer Science "
            "University of Dayton News and Opportunities am founding CANAB: Cognitive "
            "ANalytics Lab in the University of Dayton, looking for talented, "
            "hardworking and passionate students."
        ),
        "url": "https://udayton.edu/directory/artssciences/computerscience/shekarpour_saeedeh.php",
    },
    {
        "rank": 2,
        "title": "Saeedeh Shekarpour - Google Scholar",
        "body": (
            "Saeedeh Shekarpour. Assistant Professor, University of Dayton. Verified "
            "email at udayton.edu. Semantic Web, Question Answering, Knowledge Graphs."
        ),
        "url": "https://scholar.google.com/citations?user=saeedeh-shekarpour",
    },
    {
        "rank": 3,
        "title": "People - Department of Computer Science - University of Dayton",
        "body": (
            "Saeedeh Shekarpour, Assistant Professor of Computer Science. Research on "
            "knowledge graphs and question answering over linked data."
        ),
        "url": "https://udayton.edu/artssciences/academics/computerscience/people/index.php",
    },
    {
        "rank": 4,
        "title": "Saeedeh Shekarpour - dblp",
        "body": (
            "List of computer science publications by Saeedeh Shekarpour, with "
            "coauthors Sören Auer, Axel-Cyrille Ngonga Ngomo and Jens Lehmann."
        ),
        "url": "https://dblp.org/pid/saeedeh-shekarpour.html",
    },
    {
        "rank": 5,
        "title": "Question answering on linked data - University of Bonn",
        "body": (
            "Doctoral thesis by Saeedeh Shekarpour at the University of Bonn, Germany, "
            "supervised by Sören Auer."
        ),
        "url": "https://bonndoc.ulb.uni-bonn.de/thesis/shekarpour",
    },
    {
        "rank": 6,
        "title": "Saeedeh Shekarpour | Knoesis Center",
        "body": (
            "Saeedeh Shekarpour was a postdoctoral researcher at the Knoesis Center, "
            "Wright State University, working with Amit Sheth."
        ),
        "url": "https://knoesis.wright.edu/researchers/shekarpour",
    },
    {
        "rank": 7,
        "title": "CANAB: Cognitive ANalytics Lab",
        "body": (
            "CANAB: Cognitive ANalytics Lab at the University of Dayton led by "
            "Saeedeh Shekarpour. News, Students and Opportunities."
        ),
        "url": "https://canab.udayton.edu/",
    },
    {
        "rank": 8,
        "title": "Saeedeh Shekarpour - Keynote speaker",
        "body": (
            "Keynote by Saeedeh Shekarpour of the University of Dayton on question "
            "answering and knowledge graphs."
        ),
        # No page fixture: this document degrades to its snippet body.
        "url": "https://example.org/workshop/keynotes/shekarpour",
    },
]

NAV = """<nav><ul>
<li><a href="/news">News</a></li>
<li><a href="/students">Students</a></li>
<li><a href="/people">People</a></li>
</ul></nav>"""

PAGES = {
    1: f"""<!DOCTYPE html>
<html><head><title>Saeedeh Shekarpour : University of Dayton</title>
<style>body {{ font-family: sans-serif; }} .nav li {{ display: inline; }}</style>
<script>window.analytics = {{ page: "faculty" }};</script>
</head><body>
{NAV}
<h1>Saeedeh Shekarpour</h1>
<p>Assistant Professor</p>
<p>Department of Computer Science</p>
<h2>News</h2>
<ul>
<li>News: our lab received a grant for question answering over knowledge graphs.</li>
<li>News: two students presented posters at the campus symposium.</li>
</ul>
<h2>Students</h2>
<p>Students interested in research projects should send a short statement.</p>
<p>Undergraduate students and graduate students are welcome.</p>
<h2>Biography</h2>
<p>Saeedeh Shekarpour is an Assistant Professor. Before joining the University of
Dayton, she was a postdoctoral researcher at the Knoesis Center with Amit Sheth. She
received her doctorate from the University of Bonn in Germany under the supervision of
Sören Auer.</p>
<footer>Assistant Professor &middot; News &middot; Students &copy; 2024 University of Dayton</footer>
</body></html>
""",
    2: """<!DOCTYPE html>
<html><head><title>Saeedeh Shekarpour - Google Scholar</title>
<script>var citations = [120, 98, 75];</script></head><body>
<div id="profile">
<h1>Saeedeh Shekarpour</h1>
<div>Assistant Professor, University of Dayton</div>
<div>Previously postdoctoral researcher, now Assistant Professor of Computer Science</div>
<div>Profile category: Assistant Professor</div>
<div>Semantic technologies &ndash; Question Answering &ndash; Knowledge Graphs</div>
</div>
<table>
<tr><td>SINA: semantic interpretation of user queries for question answering</td><td>Saeedeh Shekarpour, Axel-Cyrille Ngonga Ngomo, Sören Auer</td></tr>
<tr><td>Keyword query expansion on linked data</td><td>Saeedeh Shekarpour, Sören Auer, Jens Lehmann</td></tr>
<tr><td>Question answering on interlinked data</td><td>Saeedeh Shekarpour, Axel-Cyrille Ngonga Ngomo, Sören Auer</td></tr>
<tr><td>Keyword search over knowledge graphs</td><td>Saeedeh Shekarpour, Jens Lehmann, Sören Auer</td></tr>
</table>
<!-- rendered by the profile service -->
</body></html>
""",
    3: f"""<!DOCTYPE html>
<html><head><title>People - Department of Computer Science</title></head><body>
{NAV}
<h1>Department of Computer Science</h1>
<h2>Faculty</h2>
<ul>
<li>Assistant Professor: Saeedeh Shekarpour</li>
<li>Saeedeh Shekarpour, Assistant Professor</li>
<li>Maria Keller, Professor</li>
</ul>
<h2>Students</h2>
<p>Students in the department join projects of the CANAB: Cognitive ANalytics Lab.</p>
<h2>News</h2>
<p>News from the department appears every week.</p>
<footer>News &middot; Students &middot; Assistant Professor listings &middot; University of Dayton, Ohio</footer>
</body></html>
""",
    4: """<!DOCTYPE html>
<html><head><title>dblp: Saeedeh Shekarpour</title></head><body>
<h1>Saeedeh Shekarpour</h1>
<ul class="publ-list">
<li>Saeedeh Shekarpour, Sören Auer, Axel-Cyrille Ngonga Ngomo: Keyword query expansion on linked data.</li>
<li>Saeedeh Shekarpour, Axel-Cyrille Ngonga Ngomo, Sören Auer: Question answering on interlinked data.</li>
<li>Saeedeh Shekarpour, Jens Lehmann, Sören Auer: Keyword search over linked data.</li>
<li>Saeedeh Shekarpour, Amit Sheth: Knowledge graphs for question answering.</li>
</ul>
<p>Coauthor index: Sören Auer, Axel-Cyrille Ngonga Ngomo, Jens Lehmann, Amit Sheth.</p>
</body></html>
""",
    5: """<!DOCTYPE html>
<html><head><title>Question answering on linked data</title></head><body>
<h1>Question answering on linked data</h1>
<p>Doctoral dissertation of Saeedeh Shekarpour, University of Bonn, Germany.</p>
<p>Supervisor: Sören Auer. Second reviewer: Jens Lehmann.</p>
<p>Abstract: the work studies keyword queries over linked data and their
interpretation as formal queries.</p>
<p>Location: Bonn, Germany.</p>
</body></html>
""",
    6: """<!DOCTYPE html>
<html><head><title>Knoesis Center</title><noscript>Enable scripts.</noscript></head><body>
<h1>Saeedeh Shekarpour</h1>
<p>Postdoctoral researcher at the Knoesis Center, Wright State University, Ohio.</p>
<p>Saeedeh Shekarpour worked with Amit Sheth on knowledge graphs and question answering
for health data.</p>
<p>Knoesis Center, Wright State University, Dayton, Ohio.</p>
</body></html>
""",
    7: f"""<!DOCTYPE html>
<html><head><title>CANAB: Cognitive ANalytics Lab</title></head><body>
{NAV}
<h1>CANAB: Cognitive ANalytics Lab</h1>
<p>The lab at the University of Dayton is directed by Saeedeh Shekarpour.</p>
<h2>News</h2>
<p>News: the lab is looking for students.</p>
<h2>Students</h2>
<p>Students of the lab study question answering and knowledge graphs.</p>
<h2>Opportunities</h2>
<p>Opportunities for students are listed under News.</p>
</body></html>
""",
}

# Entity surfaces per document rank; longer surfaces are matched first.
COMMON = [
    ("Sören Auer", "PERSON"),
    ("Axel-Cyrille Ngonga Ngomo", "PERSON"),
    ("Jens Lehmann", "PERSON"),
    ("Amit Sheth", "PERSON"),
    ("Maria Keller", "PERSON"),
    ("University of Dayton", "ORGANIZATION"),
    ("University of Bonn", "ORGANIZATION"),
    ("Wright State University", "ORGANIZATION"),
    ("Knoesis Center", "ORGANIZATION"),
    ("Google Scholar", "ORGANIZATION"),
    ("Department of Computer Science", "ORGANIZATION"),
    ("CANAB", "ORGANIZATION"),
    ("Cognitive ANalytics Lab", "ORGANIZATION"),
    ("Germany", "LOCATION"),
    ("Bonn", "LOCATION"),
    ("Dayton", "LOCATION"),
    ("Ohio", "LOCATION"),
]

# The first snippet follows the highlighting of the published example.
FIRST = [
    ("Department", "ORGANIZATION"),
    ("Computer Science University", "ORGANIZATION"),
    ("CANAB", "ORGANIZATION"),
    ("Cognitive ANalytics Lab", "ORGANIZATION"),
    ("University", "ORGANIZATION"),
    ("Sören Auer", "PERSON"),
    ("Amit Sheth", "PERSON"),
    ("Knoesis Center", "ORGANIZATION"),
    ("Germany", "LOCATION"),
    ("Bonn", "LOCATION"),
    ("Dayton", "LOCATION"),
]


def url_key(url: str) -> str:
    h = 0xCBF29CE484222325
    for b in url.encode("utf-8"):
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return f"{h:016x}"


def query_slug(query: str) -> str:
    return "-".join(re.findall(r"[a-z0-9]+", query.lower()))


def annotate(raw: bytes, entities):
    taken = []
    out = []
    for surface, kind in sorted(entities, key=lambda e: -len(e[0].encode())):
        pattern = re.compile(rb"(?<![\w#-])" + re.escape(surface.encode()) + rb"(?![\w#-])")
        for m in pattern.finditer(raw):
            s, e = m.span()
            if any(s < te and ts < e for ts, te in taken):
                continue
            taken.append((s, e))
            out.append({"start": s, "end": e, "type": kind})
    return sorted(out, key=lambda a: a["start"])


def main() -> None:
    binary = sys.argv[1]
    (OUT / "snippets").mkdir(parents=True, exist_ok=True)
    (OUT / "pages").mkdir(exist_ok=True)
    (OUT / "annotations").mkdir(exist_ok=True)
    (OUT / "snippets" / f"{query_slug(QUERY)}.json").write_text(
        json.dumps(SNIPPETS, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    for s in SNIPPETS:
        if s["rank"] in PAGES:
            (OUT / "pages" / f"{url_key(s['url'])}.html").write_text(
                PAGES[s["rank"]], encoding="utf-8")

    with tempfile.TemporaryDirectory() as tmp:
        docs_path = pathlib.Path(tmp) / "documents.json"
        subprocess.run([binary, "fetch", "--query", QUERY, "--n", "8",
                        "--fixtures", str(OUT), "--workers", "1",
                        "--out", str(docs_path)], check=True)
        docs = json.loads(docs_path.read_text(encoding="utf-8"))

    for d in docs:
        entities = FIRST if d["rank"] == 1 else COMMON
        ann = annotate(d["raw_text"].encode("utf-8"), entities)
        (OUT / "annotations" / f"{url_key(d['url'])}.json").write_text(
            json.dumps(ann, indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()

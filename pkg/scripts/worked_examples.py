"""Print the small worked examples: the sentence grammar, a tree contour and
its bracket word, and the coloring automaton of the sentence grammar."""
from splicetool.contour import coloring_automaton, contour_of_tree, universal_grammar
from splicetool.dyck import s_translate
from splicetool.fixtures import letter_tree, g_sent, s_letters, sent_word
from splicetool.grammar import enumerate_language
from splicetool.ids import label
from splicetool.parsing import parse_trees


def show(title, lines):
    print(f"== {title}")
    for line in lines:
        print("  " + line)
    print()


def main():
    g = g_sent()
    show("sentence grammar", g.productions())
    show("sentences up to length 5",
         sorted(" ".join(p.edges) for p in enumerate_language(g, 5)))
    res = parse_trees(g, sent_word())
    show("parse of 'mom sp loves sp tom'", [str(res.count)] + [str(t) for t in res.trees])

    s, t = s_letters(), letter_tree()
    c = contour_of_tree(s, t)
    show(f"contour of {t}", [" ".join(map(label, c.edges)),
                             " ".join(map(label, s_translate(s, c).edges))])

    show("universal grammar", universal_grammar(g.species, g.start).productions())
    m = coloring_automaton(g)
    show("coloring automaton", [f"{label(q)} -[{label(e)}]-> {label(r)}"
                                for q, e, r in m.transitions()]
         + [f"q0 = {label(m.q0)}, qf = {label(m.qf)}"])


if __name__ == "__main__":
    main()

from specforge.tools.ladder import Decomposition, Ladder, Side, complementary_pair


def type1_pair(entries, tail=Side.EVEN):
    return complementary_pair(Ladder(tuple(entries)), Decomposition.TYPE_I, tail)

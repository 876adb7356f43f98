class Shape:
    def __init__(self, name):
        self.name = name

    def describe(self):
        return self.label()

    def label(self):
        return self.name


class Circle(Shape):
    pass

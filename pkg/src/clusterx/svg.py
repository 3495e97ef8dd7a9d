import io
import logging
import os

log = logging.getLogger(__name__)


def _fmt(value):
    if isinstance(value, float):
        return ('%.6f' % value).rstrip('0').rstrip('.')
    return str(value)


class WriteSVG:
    '''
    SVG writing API.
    Streams nested elements with tab indentation, either to a file or to an
    in-memory buffer.
    '''

    def __init__(self, path=None):
        self.file = None
        self.path = None
        self.tabs = 0
        self.stack = []
        self.set_filename(path)

    def set_filename(self, name):
        '''
        Open the output, creating the folders needed for ``name``.
        Without a name, output goes to a buffer read back by ``getvalue``.

        Params
        ------

        name: path to the .svg file to write, or None
        '''
        if self.file is not None:
            self.file.close()
        self.tabs = 0
        self.stack = []
        self.path = name
        if name is None:
            self.file = io.StringIO()
            return
        directory = os.path.dirname(name)
        if directory and not os.path.isdir(directory):
            os.makedirs(directory)
        self.file = open(name, 'w', encoding='utf-8', newline='\n')
        log.info('SVG file: %s', name)

    def wf(self, st, tabs=0):
        '''
        Write a string, optionally indented by a number of tabs.

        Params
        ------

        st: text to write
        tabs: optional number of tabs to add
        '''
        self.file.write('%s%s' % ('\t' * tabs, st))

    def write_header(self, width, height, view_box, comment=None):
        '''
        Write the XML declaration and open the root ``svg`` element.

        Params
        ------

        width, height: size of the drawing
        view_box: (min_x, min_y, width, height) in user coordinates
        comment: optional comment placed before the root element
        '''
        self.wf('<?xml version="1.0" encoding="utf-8"?>\n')
        if comment:
            self.write_comment(comment)
        self.open_element('svg', {
            'xmlns': 'http://www.w3.org/2000/svg',
            'width': width, 'height': height,
            'viewBox': ' '.join(_fmt(v) for v in view_box)})

    def write_comment(self, comment):
        self.wf('<!-- %s -->\n' % comment.replace('--', '-'), self.tabs)

    def open_element(self, name, attributes={}):
        '''
        Open a tag (``svg``, ``g``...) and indent what follows.

        Params
        ------

        name: name of the tag
        attributes: fields added to the opening tag
        '''
        self.wf('<%s' % name, self.tabs)
        for (k, v) in attributes.items():
            self.wf(' %s="%s"' % (k, _fmt(v).replace('"', '')))
        self.wf('>\n')
        self.tabs += 1
        self.stack.append(name)

    def close_element(self):
        '''
        Close the last tag that was opened.
        '''
        self.tabs -= 1
        name = self.stack.pop()
        self.wf('</%s>\n' % name, self.tabs)

    def element(self, name, attributes={}):
        '''
        Write a single-line element.

        Params
        ------

        name: name of the element (polygon, line...)
        attributes: fields of the element
        '''
        self.wf('<%s' % name, self.tabs)
        for (k, v) in attributes.items():
            self.wf(' %s="%s"' % (k, _fmt(v)))
        self.wf('/>\n')

    def polygon(self, points, attributes={}):
        pts = ' '.join('%s,%s' % (_fmt(x), _fmt(y)) for x, y in points)
        self.element('polygon', dict({'points': pts}, **attributes))

    def line(self, start, end, attributes={}):
        self.element('line', dict({'x1': start[0], 'y1': start[1],
                                   'x2': end[0], 'y2': end[1]},
                                  **attributes))

    def close(self):
        '''
        Close every open tag and the output. Returns the document when it
        was written to a buffer.
        '''
        while self.stack:
            self.close_element()
        text = None
        if isinstance(self.file, io.StringIO):
            text = self.file.getvalue()
        self.file.close()
        self.file = None
        return text

# -*- coding: utf-8 -*-

# This code is part of mlcf.
#
# (C) Copyright the mlcf developers 2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
#
# Any modifications or derivative works of this code must retain this
# copyright notice, and modified files need to carry a notice indicating
# that they have been altered from the originals.

"""
Key/value file records for experiment runs.

Each record is one line::

    2026/08/04 13:27:06 mlcf_record 'method':'mlmc(iid)' 'estimate':'2.0104'

Floats are written with ``repr`` so that reading a record back gives the
logged value bit for bit.
"""

import glob
import logging
import logging.handlers
import os
import re
from typing import Dict, List, Optional, Union

RECORD_LEVEL = 100
RECORD_LABEL = 'mlcf_record'
DATETIME_FORMAT = '%Y/%m/%d %H:%M:%S'

_FIELD = re.compile(r"'([^']*)':'([^']*)'")


def format_record(**fields) -> str:
    """Render fields as ``'key':'value'`` pairs, floats at full precision."""
    return ' '.join("'{}':'{}'".format(key, repr(float(value)) if isinstance(value, float)
                                       else value)
                    for key, value in fields.items())


def parse_record(line: str) -> Dict[str, str]:
    """Inverse of :func:`format_record`; values stay strings."""
    return dict(_FIELD.findall(line))


class MlcfLogger(logging.getLoggerClass()):
    """
    A logger with a record channel.

    Messages go through the usual handlers. :meth:`log_to_file` bypasses
    them and hands a record straight to the shared rotating file handler,
    so records never reach the console or parent loggers.
    """

    def __init__(self, name: str, level: int = logging.NOTSET):
        super().__init__(name, level)
        self._stream_handler = None
        self._file_logging = False

    @property
    def configured(self) -> bool:
        """Whether :class:`MlcfLogging` has attached its stream handler."""
        return self._stream_handler is not None

    @property
    def file_logging(self) -> bool:
        """Whether :meth:`log_to_file` writes anything."""
        return self._file_logging

    def configure(self, stream_handler: logging.Handler, file_logging: bool):
        """Attach the console handler and set file logging. Called by :class:`MlcfLogging`."""
        if self._stream_handler is not None:
            self.removeHandler(self._stream_handler)
        self._stream_handler = stream_handler
        self.addHandler(stream_handler)
        self._file_logging = file_logging

    def log_to_file(self, **fields):
        """
        Write one record of key/value fields.

        Args:
            fields: e.g. ``method='mlmc(iid)', replication=3, estimate=2.01``
        """
        if not self._file_logging:
            return
        record = self.makeRecord(self.name, RECORD_LEVEL, '(record)', 0,
                                 format_record(**fields), None, None)
        MlcfLogging().record_handler().handle(record)


class MlcfLogging:
    """
    Process-wide record settings.

    The settings are read once, from ``~/.mlcf/logging.yaml`` or from the
    path given on first instantiation, one ``key: value`` per line with
    ``#`` comments:

    - ``file_logging``: ``true`` to write records, off otherwise
    - ``log_file``: record file, ``mlcf.log`` by default
    - ``max_size``: bytes per file before rotating, unlimited by default
    - ``max_rotations``: rotated files kept
    """

    _instance = None

    def __new__(cls, log_config_path: Optional[str] = None):
        if cls._instance is None:
            instance = object.__new__(cls)
            instance._settings = cls._read_settings(log_config_path)
            instance._handler = None
            logging.setLoggerClass(MlcfLogger)
            cls._instance = instance
        return cls._instance

    @staticmethod
    def _read_settings(log_config_path: Optional[str]) -> Dict[str, str]:
        path = log_config_path or os.path.join(os.path.expanduser('~'), '.mlcf',
                                               'logging.yaml')
        settings = {}
        if os.path.exists(path):
            with open(path, 'r') as config:
                for line in config:
                    key, sep, value = line.split('#', 1)[0].partition(':')
                    if sep:
                        settings[key.strip().lower()] = value.strip()
        return settings

    def _int_setting(self, key: str) -> int:
        value = self._settings.get(key, '')
        return int(value) if value.isdigit() else 0

    @property
    def file_logging(self) -> bool:
        """Whether records are written."""
        return self._settings.get('file_logging', '').lower() == 'true'

    @property
    def log_file(self) -> str:
        """Path of the current record file."""
        return self._settings.get('log_file') or 'mlcf.log'

    def get_logger(self, name: str) -> MlcfLogger:
        """
        Return the logger ``name``, configured on first use.

        Raises:
            TypeError: if a plain logger with this name already exists
        """
        logger = logging.getLogger(name)
        if not isinstance(logger, MlcfLogger):
            raise TypeError("Logger '%s' was created before MlcfLogging "
                            "registered its logger class" % name)
        if not logger.configured:
            stream_handler = logging.StreamHandler()
            stream_handler.setLevel(logging.WARNING)
            stream_handler.setFormatter(
                logging.Formatter('%(levelname)s: %(name)s - %(message)s'))
            logger.configure(stream_handler, self.file_logging)
        return logger

    def record_handler(self) -> logging.Handler:
        """The rotating file handler shared by all loggers, opened on first record."""
        if self._handler is None:
            self._handler = logging.handlers.RotatingFileHandler(
                self.log_file, maxBytes=self._int_setting('max_size'),
                backupCount=self._int_setting('max_rotations'))
            self._handler.setFormatter(logging.Formatter(
                '%(asctime)s {} %(message)s'.format(RECORD_LABEL), datefmt=DATETIME_FORMAT))
        return self._handler

    @classmethod
    def _reset_to_defaults(cls, *names: str):
        """Forget the settings and detach the named loggers. For tests."""
        if cls._instance is not None and cls._instance._handler is not None:
            cls._instance._handler.close()
        cls._instance = None
        for name in names:
            logger = logging.getLogger(name)
            if isinstance(logger, MlcfLogger) and logger.configured:
                logger.removeHandler(logger._stream_handler)
                logger._stream_handler = None
                logger._file_logging = False


class MlcfLogReader:
    """Read back records written by :meth:`MlcfLogger.log_to_file`."""

    def get_log_files(self) -> List[str]:
        """The record file and its rotations, oldest first."""
        base = os.path.abspath(MlcfLogging().log_file)
        pattern = re.compile(re.escape(base) + r'(\.\d+)?$')
        files = [path for path in glob.glob(glob.escape(base) + '*') if pattern.match(path)]
        # a higher rotation suffix is older
        return sorted(files, key=lambda path: -int(path[len(base) + 1:] or 0))

    def read_records(self, log_files: Optional[Union[str, List[str]]] = None,
                     keys: Optional[List[str]] = None) -> List[Dict[str, str]]:
        """
        Records as dictionaries of strings, in file order.

        Args:
            log_files: files to read, the record file and its rotations by default
            keys: keep only these keys; records left empty are dropped

        Returns:
            list: one ``{key: value}`` dictionary per record
        """
        if log_files is None:
            log_files = self.get_log_files()
        elif isinstance(log_files, str):
            log_files = [log_files]
        records = []
        for path in log_files:
            with open(path, 'r') as log:
                for line in log:
                    _, label, fields = line.partition(' {} '.format(RECORD_LABEL))
                    if not label:
                        continue
                    record = parse_record(fields)
                    if keys is not None:
                        record = {key: value for key, value in record.items() if key in keys}
                    if record:
                        records.append(record)
        return records

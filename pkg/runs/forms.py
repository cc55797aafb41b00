from django import forms
from django.core.exceptions import ValidationError

from core.exceptions import DomainError
from core.params import DEFAULT_C1, DEFAULT_C2, ProblemParams, validate


class ProblemParamsForm(forms.Form):
    """Valida los parámetros físicos que llegan por flags o por --params"""

    alpha = forms.FloatField(label='Exponente del potencial mutuo')
    beta = forms.FloatField(label='Exponente del potencial de los centros')
    m = forms.FloatField(label='Masa de cada cuerpo')
    M = forms.FloatField(label='Masa de cada centro')
    n = forms.IntegerField(label='Número de cuerpos', min_value=2)
    c1 = forms.JSONField(required=False, label='Centro 1')
    c2 = forms.JSONField(required=False, label='Centro 2')

    def clean_c1(self):
        return self._point(self.cleaned_data.get('c1'), DEFAULT_C1)

    def clean_c2(self):
        return self._point(self.cleaned_data.get('c2'), DEFAULT_C2)

    @staticmethod
    def _point(value, default):
        if value in (None, ''):
            return default
        try:
            point = tuple(float(v) for v in value)
        except (TypeError, ValueError):
            raise ValidationError('El centro debe ser una lista de 3 números', code='invalid_center')
        if len(point) != 3:
            raise ValidationError('El centro debe ser una lista de 3 números', code='invalid_center')
        return point

    def clean(self):
        cleaned = super().clean()
        if self.errors:
            return cleaned
        try:
            cleaned['params'] = validate(ProblemParams(
                alpha=cleaned['alpha'],
                beta=cleaned['beta'],
                m=cleaned['m'],
                M=cleaned['M'],
                n=cleaned['n'],
                c1=cleaned['c1'],
                c2=cleaned['c2'],
            ))
        except DomainError as e:
            raise ValidationError(str(e), code='domain')
        return cleaned

    def error_message(self):
        """Flatten form errors into one line for stderr."""
        parts = []
        for name, errors in self.errors.items():
            label = 'params' if name == '__all__' else name
            parts.append(f"{label}: {' '.join(errors)}")
        return '; '.join(parts)

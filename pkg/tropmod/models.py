from django.db import models, transaction


class PosetSnapshot(models.Model):
    """Stored cell poset, the golden record later runs are compared against"""
    KINDS = [
        ('moduli', 'Moduli poset P_g'),
        ('schottky', 'Schottky poset A_g^cogr'),
    ]

    kind = models.CharField(max_length=20, choices=KINDS)
    genus = models.PositiveSmallIntegerField()
    fvector = models.JSONField()
    payload = models.JSONField(help_text="Canonical JSON export of the poset")
    digest = models.CharField(max_length=64, help_text="SHA-256 of the canonical JSON text")
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ['kind', 'genus']
        constraints = [
            models.UniqueConstraint(fields=['kind', 'genus'], name='unique_snapshot_per_kind_genus'),
        ]

    def __str__(self):
        return f"{self.kind} g={self.genus} ({sum(self.fvector)} cells)"

    @classmethod
    def store(cls, poset):
        """Create or replace the snapshot of a built poset; returns (snapshot, changed)"""
        with transaction.atomic():
            previous = cls.objects.select_for_update().filter(kind=poset.kind, genus=poset.genus).first()
            digest = poset.digest()
            snapshot, _ = cls.objects.update_or_create(
                kind=poset.kind,
                genus=poset.genus,
                defaults={
                    'fvector': poset.to_json()['fvector'],
                    'payload': poset.to_json(),
                    'digest': digest,
                },
            )
        return snapshot, previous is not None and previous.digest != digest

    @classmethod
    def matches(cls, poset):
        """True or False against a stored snapshot, None when nothing is stored"""
        snapshot = cls.objects.filter(kind=poset.kind, genus=poset.genus).first()
        if snapshot is None:
            return None
        return snapshot.digest == poset.digest()


class VerificationRun(models.Model):
    """One recorded verify-all run"""
    genus_max = models.PositiveSmallIntegerField()
    seed = models.IntegerField(default=0)
    report = models.TextField()
    digest = models.CharField(max_length=64)
    passed = models.BooleanField(default=False)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at', '-id']

    def __str__(self):
        status = 'passed' if self.passed else 'failed'
        return f"verify-all g<={self.genus_max} seed={self.seed} {status}"

    def previous(self):
        return (
            VerificationRun.objects.filter(genus_max=self.genus_max, seed=self.seed)
            .exclude(pk=self.pk)
            .order_by('-created_at', '-id')
            .first()
        )

    def is_reproducible(self):
        """Compare with the previous run of the same parameters; None if this is the first"""
        previous = self.previous()
        if previous is None:
            return None
        return previous.digest == self.digest

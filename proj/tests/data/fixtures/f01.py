def solve(nums, k):
    out = []
    for i in range(0, len(nums)):
        if nums[i] > k: out.append(nums[i]*2)
    cnt2=0
    for i in range(0, len(nums)):
        for j in range(i + 1, len(nums)):
            if (nums[i] + nums[j]) % k == 0: cnt2 += 1
    return len(out)+cnt2

n, k = map(int, input().split())
nums = list(map(int, input().split()))
print(solve(nums, k))
